#include "manifest.hpp"

#include <openssl/evp.h>

#include <array>
#include <ctime>
#include <fstream>
#include <memory>
#include <stdexcept>

namespace rlm::cli {

std::string sha256_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string() + " for hashing");
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("sha256 init failed");
  std::array<char, 1 << 16> buf{};
  while (in) {
    in.read(buf.data(), buf.size());
    if (in.gcount() > 0) EVP_DigestUpdate(ctx.get(), buf.data(), static_cast<std::size_t>(in.gcount()));
  }
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx.get(), md.data(), &len);
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 15];
  }
  return out;
}

RunManifest::RunManifest(std::string command)
    : command_(std::move(command)), start_(std::chrono::steady_clock::now()) {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  started_at_ = buf;
}

nlohmann::json RunManifest::finish(int exit_code, const std::string& error) const {
  nlohmann::json outputs = nlohmann::json::array();
  for (const auto& p : outputs_) {
    nlohmann::json o = {{"path", p.string()}};
    try {
      o["sha256"] = sha256_file(p);
    } catch (const std::exception& e) {
      o["sha256"] = nullptr;
    }
    outputs.push_back(o);
  }
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  nlohmann::json j = {
      {"command", command_},
      {"params", params_},
      {"seed", seed_ ? nlohmann::json(*seed_) : nlohmann::json(nullptr)},
      {"version", RLM_VERSION},
      {"started_at", started_at_},
      {"wall_clock_seconds", wall},
      {"outputs", outputs},
      {"exit_code", exit_code},
  };
  if (!error.empty()) j["error"] = error;
  if (!extra_.empty()) j["details"] = extra_;
  return j;
}

}  // namespace rlm::cli
