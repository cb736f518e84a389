#include "kruskal/manifest.hpp"

#include <cstdio>
#include <ctime>
#include <fstream>

#include <openssl/evp.h>

#include "kruskal/errors.hpp"

namespace kruskal {

std::string sha256_hex(std::string_view bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw IoError("sha256 digest failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out += kHex[digest[i] >> 4];
    out += kHex[digest[i] & 0xF];
  }
  return out;
}

std::string iso8601_utc(std::chrono::system_clock::time_point t) {
  const std::time_t secs = std::chrono::system_clock::to_time_t(t);
  std::tm tm{};
  gmtime_r(&secs, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

Json manifest_to_json(const Manifest& m) {
  Json outputs = Json::array();
  for (const auto& o : m.outputs) outputs.push_back({{"path", o.path}, {"bytes", o.bytes}, {"sha256", o.sha256}});
  return {{"tool_version", m.tool_version},
          {"command_line", m.command_line},
          {"seed", m.seed ? seed_to_json(*m.seed) : Json(nullptr)},
          {"seed_source", m.seed_source},
          {"started_at", m.started_at},
          {"finished_at", m.finished_at},
          {"outputs", std::move(outputs)}};
}

void write_file(const std::string& path, std::string_view bytes) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot open '" + path + "' for writing");
  f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  f.close();
  if (!f) throw IoError("failed writing '" + path + "'");
}

void write_with_manifest(const std::string& path, std::string_view bytes, Manifest manifest) {
  write_file(path, bytes);
  manifest.outputs.push_back({path, bytes.size(), sha256_hex(bytes)});
  manifest.finished_at = iso8601_utc(std::chrono::system_clock::now());
  write_file(path + ".manifest.json", manifest_to_json(manifest).dump(2) + "\n");
}

}  // namespace kruskal
