#include "cubeflag/manifest.hpp"

#include <openssl/evp.h>

#include <fstream>

#include "cubeflag/cube.hpp"
#include "json.hpp"

namespace cubeflag {

namespace {

std::string hex_digest(const unsigned char* digest, unsigned len) {
  static const char* kHex = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned i = 0; i < len; ++i) {
    out.push_back(kHex[digest[i] >> 4]);
    out.push_back(kHex[digest[i] & 0xf]);
  }
  return out;
}

struct Sha256 {
  EVP_MD_CTX* ctx;
  Sha256() : ctx(EVP_MD_CTX_new()) {
    if (!ctx || EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr) != 1)
      throw Error("sha256 init failed");
  }
  ~Sha256() { EVP_MD_CTX_free(ctx); }
  void update(const char* data, size_t len) {
    if (EVP_DigestUpdate(ctx, data, len) != 1)
      throw Error("sha256 update failed");
  }
  std::string finish() {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned len = 0;
    if (EVP_DigestFinal_ex(ctx, digest, &len) != 1)
      throw Error("sha256 final failed");
    return hex_digest(digest, len);
  }
};

}  // namespace

std::string sha256_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in.is_open()) throw Error("cannot open " + path);
  Sha256 h;
  char buf[65536];
  while (in) {
    in.read(buf, sizeof buf);
    std::streamsize got = in.gcount();
    if (got > 0) h.update(buf, static_cast<size_t>(got));
  }
  return h.finish();
}

std::string sha256_bytes(const std::string& bytes) {
  Sha256 h;
  h.update(bytes.data(), bytes.size());
  return h.finish();
}

void RunManifest::write(const std::string& path) const {
  nlohmann::json j;
  j["tool_version"] = kToolVersion;
  j["subcommand"] = subcommand;
  nlohmann::json params = nlohmann::json::object();
  for (const auto& [k, v] : parameters) params[k] = v;
  j["parameters"] = params;
  nlohmann::json ins = nlohmann::json::object();
  for (const auto& p : inputs) ins[p] = sha256_file(p);
  j["inputs"] = ins;
  nlohmann::json outs = nlohmann::json::object();
  for (const auto& p : outputs) outs[p] = sha256_file(p);
  j["outputs"] = outs;
  j["elapsed_secs"] = elapsed_secs;
  std::ofstream out(path);
  if (!out.is_open()) throw Error("cannot write " + path);
  out << j.dump(2) << "\n";
}

}  // namespace cubeflag
