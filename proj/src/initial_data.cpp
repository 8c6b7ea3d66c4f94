#include "decaylab/initial_data.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <sstream>

#include "decaylab/errors.hpp"
#include "decaylab/format.hpp"

namespace decaylab {

namespace {

double smoothstep(double x) {
  if (x <= 0) return 0.0;
  if (x >= 1) return 1.0;
  return x * x * x * (10 - 15 * x + 6 * x * x);
}

double parse_number(const std::string& key, const std::string& text) {
  double value = 0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || text.empty()) {
    throw InvalidArgument("descriptor key '" + key + "' has non-numeric value '" + text + "'");
  }
  return value;
}

std::map<std::string, double> parse_keys(const std::string& body,
                                         std::initializer_list<const char*> allowed) {
  std::map<std::string, double> out;
  std::stringstream ss(body);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw InvalidArgument("descriptor item '" + item + "' lacks '='");
    const std::string key = item.substr(0, eq);
    if (std::find_if(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; }) ==
        allowed.end()) {
      throw InvalidArgument("unknown descriptor key '" + key + "'");
    }
    out[key] = parse_number(key, item.substr(eq + 1));
  }
  return out;
}

}  // namespace

double BumpProfile::value(double r) const {
  const double xi = (r - center) / width;
  if (std::abs(xi) >= 1) return 0.0;
  const double w = 1 - xi * xi;
  return amp * w * w * w * w;
}

double BumpProfile::d1(double r) const {
  const double xi = (r - center) / width;
  if (std::abs(xi) >= 1) return 0.0;
  const double w = 1 - xi * xi;
  return amp * 4 * w * w * w * (-2 * xi) / width;
}

double BumpProfile::d2(double r) const {
  const double xi = (r - center) / width;
  if (std::abs(xi) >= 1) return 0.0;
  const double w = 1 - xi * xi;
  // d^2/dxi^2 (1 - xi^2)^4 = 48 xi^2 w^2 - 8 w^3
  return amp * (48 * xi * xi * w * w - 8 * w * w * w) / (width * width);
}

double PolyTailProfile::value(double r, double r_inner) const {
  const double eta = 1 - smoothstep(r / cutoff - 1);
  return amp * smoothstep(r - r_inner) * std::pow(r, -power) * eta;
}

std::string DataDescriptor::family() const {
  return std::holds_alternative<BumpProfile>(profile) ? "bump" : "polytail";
}

std::string DataDescriptor::to_string() const {
  std::string out;
  if (const auto* b = std::get_if<BumpProfile>(&profile)) {
    out = "bump:center=" + format_double(b->center) + ",width=" + format_double(b->width) +
          ",amp=" + format_double(b->amp);
  } else {
    const auto& p = std::get<PolyTailProfile>(profile);
    out = "polytail:power=" + format_double(p.power) + ",cutoff=" + format_double(p.cutoff) +
          ",amp=" + format_double(p.amp);
  }
  if (velocity != 0) out += ",vel=" + format_double(velocity);
  return out;
}

double DataDescriptor::support_extent(const ModelParams& params) const {
  if (const auto* b = std::get_if<BumpProfile>(&profile)) {
    return b->center + b->width - params.r_inner;
  }
  return 2 * std::get<PolyTailProfile>(profile).cutoff - params.r_inner;
}

void DataDescriptor::validate(const ModelParams& params) const {
  if (!std::isfinite(velocity)) throw InvalidArgument("velocity factor must be finite");
  if (const auto* b = std::get_if<BumpProfile>(&profile)) {
    if (!(b->width > 0)) throw InvalidArgument("bump width must be positive");
    if (b->center - b->width < params.r_inner) {
      throw InvalidArgument("bump must lie outside the obstacle (center - width >= r_inner)");
    }
    return;
  }
  const auto& p = std::get<PolyTailProfile>(profile);
  if (!(p.power > 0)) throw InvalidArgument("polytail power must be positive");
  if (!(p.cutoff >= params.r_inner + 1)) {
    throw InvalidArgument("polytail cutoff must be at least r_inner + 1");
  }
}

DataDescriptor parse_descriptor(const std::string& text) {
  const auto colon = text.find(':');
  const std::string family = text.substr(0, colon);
  const std::string body = colon == std::string::npos ? "" : text.substr(colon + 1);
  DataDescriptor out;
  if (family == "bump") {
    auto keys = parse_keys(body, {"center", "width", "amp", "vel"});
    BumpProfile b;
    if (keys.count("center")) b.center = keys["center"];
    if (keys.count("width")) b.width = keys["width"];
    if (keys.count("amp")) b.amp = keys["amp"];
    out.profile = b;
    if (keys.count("vel")) out.velocity = keys["vel"];
  } else if (family == "polytail") {
    auto keys = parse_keys(body, {"power", "cutoff", "amp", "vel"});
    PolyTailProfile p;
    if (keys.count("power")) p.power = keys["power"];
    if (keys.count("cutoff")) p.cutoff = keys["cutoff"];
    if (keys.count("amp")) p.amp = keys["amp"];
    out.profile = p;
    if (keys.count("vel")) out.velocity = keys["vel"];
  } else {
    throw InvalidArgument("unknown initial-data family '" + family + "'");
  }
  return out;
}

InitialData sample(const DataDescriptor& descriptor, const RadialGrid& grid) {
  descriptor.validate(grid.params());
  const auto& r = grid.nodes();
  RadialField profile = grid.zeros();
  for (Eigen::Index i = 1; i + 1 < grid.size(); ++i) {
    if (const auto* b = std::get_if<BumpProfile>(&descriptor.profile)) {
      profile[i] = b->value(r[i]);
    } else {
      profile[i] = std::get<PolyTailProfile>(descriptor.profile).value(r[i], grid.r_inner());
    }
  }
  InitialData out;
  out.u1 = descriptor.velocity * profile;
  out.u0 = std::move(profile);
  out.family = descriptor.family();
  out.support_extent = descriptor.support_extent(grid.params());
  return out;
}

InitialData from_samples(const RadialGrid& grid, RadialField u0, RadialField u1) {
  if (u0.size() != grid.size() || u1.size() != grid.size()) {
    throw InvalidArgument("sampled data do not match the grid size");
  }
  u0[0] = u0[grid.size() - 1] = 0.0;
  u1[0] = u1[grid.size() - 1] = 0.0;
  InitialData out;
  out.support_extent = support_extent_of(grid, u0, u1, 0.0);
  out.u0 = std::move(u0);
  out.u1 = std::move(u1);
  out.family = "custom";
  return out;
}

double support_extent_of(const RadialGrid& grid, const RadialField& u, const RadialField& v,
                         double threshold) {
  for (Eigen::Index i = grid.size() - 1; i >= 0; --i) {
    if (std::abs(u[i]) > threshold || std::abs(v[i]) > threshold) {
      return grid.nodes()[i] - grid.r_inner();
    }
  }
  return 0.0;
}

}  // namespace decaylab
