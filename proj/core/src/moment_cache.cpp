#include "pivlag/moment_cache.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "pivlag/errors.hpp"

namespace pivlag {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char* kSchema = "pivlag-moments/1";

std::string param_key(const ModelParams& p, MomentMethod method, Bits bits) {
  int d = cache_digits(bits);
  std::ostringstream os;
  os << p.nu.to_string(d) << '|' << p.b.to_string(d) << '|' << p.L.to_string(d) << '|' << p.n
     << '|' << method_name(method) << '|' << bits;
  return os.str();
}

json params_json(const ModelParams& p, int digits) {
  return json{{"nu", p.nu.to_string(digits)},
              {"b", p.b.to_string(digits)},
              {"L", p.L.to_string(digits)},
              {"n", p.n}};
}

}  // namespace

int cache_digits(Bits bits) { return static_cast<int>(std::ceil(static_cast<double>(bits) * 0.3011)) + 5; }

std::uint64_t fnv1a64(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

MomentCache::MomentCache(fs::path dir) : dir_(std::move(dir)) {}

std::optional<fs::path> MomentCache::default_dir() {
  const char* env = std::getenv("PIVLAG_CACHE_DIR");
  if (env == nullptr || *env == '\0') return std::nullopt;
  return fs::path(env);
}

fs::path MomentCache::path_for(const ModelParams& p, MomentMethod method, Bits bits) const {
  char name[32];
  std::snprintf(name, sizeof name, "%016llx.json",
                static_cast<unsigned long long>(fnv1a64(param_key(p, method, bits))));
  return dir_ / name;
}

std::optional<MomentTable> MomentCache::load(const ModelParams& p, MomentMethod method, Bits bits,
                                             long m) const {
  fs::path file = path_for(p, method, bits);
  std::ifstream in(file);
  if (!in) return std::nullopt;
  json doc;
  try {
    in >> doc;
  } catch (const json::exception&) {
    return std::nullopt;
  }
  int d = cache_digits(bits);
  if (doc.value("schema", "") != kSchema || doc.value("bits", Bits{0}) != bits ||
      doc.value("method", "") != method_name(method) || doc["params"] != params_json(p, d)) {
    return std::nullopt;
  }
  const json& mu = doc["mu"];
  if (!mu.is_array() || static_cast<long>(mu.size()) < m + 1) return std::nullopt;
  PrecisionScope scope(bits);
  MomentTable tbl;
  tbl.params = p;
  tbl.prec_bits = bits;
  tbl.method = method;
  tbl.values.reserve(static_cast<std::size_t>(m) + 1);
  for (long j = 0; j <= m; ++j) {
    const json& v = mu[static_cast<std::size_t>(j)];
    tbl.values.emplace_back(Real::parse(v[0].get<std::string>()), Real::parse(v[1].get<std::string>()));
  }
  return tbl;
}

void MomentCache::store(const MomentTable& tbl) const {
  int d = cache_digits(tbl.prec_bits);
  json mu = json::array();
  for (const Complex& v : tbl.values) mu.push_back({v.re().to_string(d), v.im().to_string(d)});
  json doc{{"schema", kSchema},
           {"params", params_json(tbl.params, d)},
           {"bits", tbl.prec_bits},
           {"method", method_name(tbl.method)},
           {"m", static_cast<long>(tbl.values.size()) - 1},
           {"mu", std::move(mu)}};
  fs::create_directories(dir_);
  fs::path target = path_for(tbl.params, tbl.method, tbl.prec_bits);
  std::random_device rd;
  fs::path tmp = target;
  tmp += ".tmp" + std::to_string(rd());
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw Error(ErrorKind::InvalidArgument, "cannot write cache file " + tmp.string());
    out << doc.dump(1) << '\n';
    if (!out) throw Error(ErrorKind::InvalidArgument, "short write to " + tmp.string());
  }
  fs::rename(tmp, target);
}

MomentTable cached_moments(const ModelParams& p, long m, MomentMethod method,
                           const PrecisionContext& ctx, const MomentCache* cache,
                           bool force_recompute) {
  if (cache != nullptr && !force_recompute) {
    if (auto hit = cache->load(p, method, ctx.bits, m)) return *hit;
  }
  MomentTable tbl = moments(p, m, method, ctx);
  if (cache != nullptr) cache->store(tbl);
  return tbl;
}

}  // namespace pivlag
