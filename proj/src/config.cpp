#include "beamtrim/config.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "beamtrim/errors.hpp"

namespace beamtrim {

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(std::string_view key, std::string_view value) {
  const std::string s(value);
  char* end = nullptr;
  const double d = std::strtod(s.c_str(), &end);
  if (s.empty() || *end != '\0') throw ConfigError("bad number for " + std::string(key) + ": '" + s + "'");
  return d;
}

int to_int(std::string_view key, std::string_view value) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (ec != std::errc{} || ptr != value.data() + value.size()) {
    throw ConfigError("bad integer for " + std::string(key) + ": '" + std::string(value) + "'");
  }
  return v;
}

bool to_bool(std::string_view key, std::string_view value) {
  if (value == "true" || value == "1" || value == "on") return true;
  if (value == "false" || value == "0" || value == "off") return false;
  throw ConfigError("bad boolean for " + std::string(key) + ": '" + std::string(value) + "'");
}

}  // namespace

void apply_config_value(Config& cfg, std::string_view key, std::string_view value) {
  auto& f = cfg.odometry.filter;
  auto& icp = cfg.odometry.icp;
  auto& in = cfg.intrinsics;
  if (key == "voxel_size") {
    f.voxel_size = to_double(key, value);
  } else if (key == "k") {
    f.k = to_int(key, value);
  } else if (key == "c_tau") {
    f.c_tau = to_double(key, value);
  } else if (key == "curvature_max") {
    f.curvature_max = to_double(key, value);
  } else if (key == "xi") {
    f.xi = to_double(key, value);
  } else if (key == "ncf") {
    f.ncf_enabled = to_bool(key, value);
  } else if (key == "max_iterations") {
    icp.max_iterations = to_int(key, value);
  } else if (key == "abs_trans_eps") {
    icp.abs_trans_eps = to_double(key, value);
  } else if (key == "abs_rot_eps") {
    icp.abs_rot_eps = to_double(key, value);
  } else if (key == "rel_eps") {
    icp.rel_eps = to_double(key, value);
  } else if (key == "rejector") {
    icp.rejector = parse_rejector(value);
  } else if (key == "trim_fraction") {
    icp.trim_fraction = to_double(key, value);
  } else if (key == "max_distance") {
    icp.max_distance = to_double(key, value);
  } else if (key == "damping") {
    icp.damping = to_double(key, value);
  } else if (key == "azimuth_increment") {
    in.azimuth_increment = to_double(key, value);
  } else if (key == "ring_count") {
    in.ring_count = to_int(key, value);
    if (in.ring_count >= 2 && in.ring_pitch.size() != static_cast<std::size_t>(in.ring_count - 1)) {
      const double p = in.ring_pitch.empty() ? 0.0 : in.ring_pitch.front();
      in.ring_pitch.assign(static_cast<std::size_t>(in.ring_count - 1), p);
    }
  } else if (key == "ring_pitch") {
    std::vector<double> table;
    std::string_view rest = value;
    while (!rest.empty()) {
      const auto comma = rest.find(',');
      table.push_back(to_double(key, trim(rest.substr(0, comma))));
      rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
    }
    if (table.size() == 1 && in.ring_count >= 2) {
      in.ring_pitch.assign(static_cast<std::size_t>(in.ring_count - 1), table.front());
    } else {
      in.ring_pitch = table;
    }
  } else if (key == "range_noise_std") {
    in.range_noise_std = to_double(key, value);
  } else {
    throw ConfigError("unknown config key '" + std::string(key) + "'");
  }
}

Config parse_config(std::string_view text, Config cfg) {
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError(line_no, "expected key = value");
    try {
      apply_config_value(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    } catch (const ConfigError& e) {
      throw ParseError(line_no, e.what());
    }
  }
  try {
    cfg.intrinsics.validate();
    cfg.odometry.filter.validate();
    cfg.odometry.icp.validate();
  } catch (const ConfigError& e) {
    throw ParseError(line_no, e.what());
  }
  return cfg;
}

Config load_config(const std::filesystem::path& path, Config base) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), std::move(base));
}

std::string format_config(const Config& cfg) {
  const auto& f = cfg.odometry.filter;
  const auto& icp = cfg.odometry.icp;
  const auto& in = cfg.intrinsics;
  std::ostringstream os;
  os.precision(17);
  os << "voxel_size = " << f.voxel_size << "\nk = " << f.k << "\nc_tau = " << f.c_tau
     << "\ncurvature_max = " << f.curvature_max << "\nxi = " << f.xi
     << "\nncf = " << (f.ncf_enabled ? "true" : "false") << "\nmax_iterations = " << icp.max_iterations
     << "\nabs_trans_eps = " << icp.abs_trans_eps << "\nabs_rot_eps = " << icp.abs_rot_eps
     << "\nrel_eps = " << icp.rel_eps << "\nrejector = " << to_string(icp.rejector)
     << "\ntrim_fraction = " << icp.trim_fraction << "\nmax_distance = " << icp.max_distance
     << "\ndamping = " << icp.damping << "\nazimuth_increment = " << in.azimuth_increment
     << "\nring_count = " << in.ring_count << "\nring_pitch = ";
  for (std::size_t i = 0; i < in.ring_pitch.size(); ++i) os << (i ? "," : "") << in.ring_pitch[i];
  os << "\nrange_noise_std = " << in.range_noise_std << '\n';
  return os.str();
}

}  // namespace beamtrim
