#include "llgs/magnet.hpp"

#include <cmath>
#include <ostream>
#include <string>

#include <nlohmann/json.hpp>

#include "llgs/errors.hpp"

namespace llgs {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw ConfigError("magnet parameters: " + what);
}

void check_unit_m(const Vec3& m, const char* where) {
  if (std::fabs(m.norm() - 1.0) > 1e-6)
    throw std::invalid_argument(std::string(where) + ": |m| deviates from 1 beyond 1e-6");
}

}  // namespace

void MagnetParams::validate(std::ostream* warn) const {
  require(Ms > 0.0, "Ms must be > 0");
  require(Hk >= 0.0, "Hk must be >= 0");
  require(alpha > 0.0, "alpha must be > 0");
  require(volume > 0.0, "volume must be > 0");
  require(temperature >= 0.0, "temperature must be >= 0");
  require(easy_axis.finite() && demag.finite(), "non-finite vector entries");
  require(std::fabs(easy_axis.norm() - 1.0) <= 1e-12, "easy_axis must be unit length (1e-12)");
  require(demag.x >= 0.0 && demag.y >= 0.0 && demag.z >= 0.0, "demag coefficients must be >= 0");
  require(constants.gamma > 0 && constants.mu0 > 0 && constants.kB > 0 && constants.q > 0 &&
              constants.hbar > 0,
          "physical constants must be positive");
  const double nsum = demag.x + demag.y + demag.z;
  if ((nsum < 0.0 || nsum > 1.0 + 1e-9) && warn)
    *warn << "warning: demag coefficients sum to " << nsum << ", outside [0, 1]\n";
}

Vec3 effective_field(const Vec3& m, const MagnetParams& p, const DriveInput& d, const Vec3& h_T) {
  check_unit_m(m, "effective_field");
  const Vec3 h = effective_field_det(m, p, d);
  return {h.x + h_T.x, h.y + h_T.y, h.z + h_T.z};
}

Mat3 field_jacobian(const MagnetParams& p) {
  return p.hk_ratio() * outer(p.easy_axis, p.easy_axis) - Mat3::diag(p.demag);
}

double total_energy(const Vec3& m, const MagnetParams& p, const DriveInput& d) {
  check_unit_m(m, "total_energy");
  const double mu0 = p.constants.mu0;
  const Vec3 M = m * p.Ms;
  const Vec3 Happ = d.h_app * p.Ms;
  const double cos_t = dot(p.easy_axis, m);
  const double e_zeeman = -mu0 * dot(Happ, M);
  const double e_uniaxial = -p.uniaxial_density() * cos_t * cos_t;
  const double e_shape =
      0.5 * mu0 * (p.demag.x * M.x * M.x + p.demag.y * M.y * M.y + p.demag.z * M.z * M.z);
  return p.volume * (e_zeeman + e_uniaxial + e_shape);
}

double thermal_nu(const MagnetParams& p) {
  if (p.temperature == 0.0) return 0.0;
  return std::sqrt(2.0 * p.alpha * p.constants.kB * p.temperature /
                   (p.constants.mu0 * p.Ms * p.Ms * p.volume));
}

double thermal_sigma(const MagnetParams& p, double dt_norm) {
  if (dt_norm <= 0.0) throw std::invalid_argument("thermal_sigma: dt_norm must be > 0");
  return thermal_nu(p) * std::sqrt(dt_norm);
}

namespace {

Vec3 vec3_from_json(const nlohmann::json& j, const std::string& key) {
  const auto& v = j.at(key);
  if (!v.is_array() || v.size() != 3)
    throw ConfigError("'" + key + "' must be an array of 3 numbers");
  return {v[0].get<double>(), v[1].get<double>(), v[2].get<double>()};
}

void reject_unknown(const nlohmann::json& j, std::initializer_list<const char*> allowed,
                    const std::string& where) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* k : allowed)
      if (it.key() == k) ok = true;
    if (!ok) throw ConfigError("unknown key '" + it.key() + "' in " + where);
  }
}

}  // namespace

MagnetParams MagnetParams::from_json(const nlohmann::json& j) {
  reject_unknown(j,
                 {"Ms", "Hk", "alpha", "volume", "temperature", "easy_axis", "demag", "constants"},
                 "magnet");
  MagnetParams p;
  p.Ms = j.at("Ms").get<double>();
  p.Hk = j.at("Hk").get<double>();
  p.alpha = j.at("alpha").get<double>();
  p.volume = j.at("volume").get<double>();
  p.temperature = j.at("temperature").get<double>();
  p.easy_axis = vec3_from_json(j, "easy_axis");
  p.demag = vec3_from_json(j, "demag");
  if (j.contains("constants")) {
    const auto& c = j.at("constants");
    reject_unknown(c, {"gamma", "mu0", "kB", "q", "hbar"}, "magnet.constants");
    if (c.contains("gamma")) p.constants.gamma = c.at("gamma").get<double>();
    if (c.contains("mu0")) p.constants.mu0 = c.at("mu0").get<double>();
    if (c.contains("kB")) p.constants.kB = c.at("kB").get<double>();
    if (c.contains("q")) p.constants.q = c.at("q").get<double>();
    if (c.contains("hbar")) p.constants.hbar = c.at("hbar").get<double>();
  }
  return p;
}

nlohmann::json MagnetParams::to_json() const {
  return {{"Ms", Ms},
          {"Hk", Hk},
          {"alpha", alpha},
          {"volume", volume},
          {"temperature", temperature},
          {"easy_axis", {easy_axis.x, easy_axis.y, easy_axis.z}},
          {"demag", {demag.x, demag.y, demag.z}},
          {"constants",
           {{"gamma", constants.gamma},
            {"mu0", constants.mu0},
            {"kB", constants.kB},
            {"q", constants.q},
            {"hbar", constants.hbar}}}};
}

DriveInput DriveInput::from_json(const nlohmann::json& j) {
  reject_unknown(j, {"h_app", "i_s"}, "drive");
  DriveInput d;
  if (j.contains("h_app")) d.h_app = vec3_from_json(j, "h_app");
  if (j.contains("i_s")) d.i_s = vec3_from_json(j, "i_s");
  return d;
}

nlohmann::json DriveInput::to_json() const {
  return {{"h_app", {h_app.x, h_app.y, h_app.z}}, {"i_s", {i_s.x, i_s.y, i_s.z}}};
}

}  // namespace llgs
