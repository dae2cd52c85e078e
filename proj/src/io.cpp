#include "rodwheel/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace rodwheel {

namespace {

using nlohmann::json;

void reject_unknown_keys(const json& obj, std::string_view section, std::initializer_list<std::string_view> known) {
  for (const auto& item : obj.items()) {
    bool ok = false;
    for (auto k : known) ok = ok || item.key() == k;
    if (!ok) throw ConfigError("unknown key '" + item.key() + "' in section '" + std::string(section) + "'");
  }
}

const json* section(const json& doc, const char* name) {
  if (!doc.contains(name)) return nullptr;
  const json& s = doc.at(name);
  if (!s.is_object()) throw ConfigError(std::string("section '") + name + "' must be an object");
  return &s;
}

double number(const json& obj, const char* key, double fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number()) throw ConfigError(std::string("'") + key + "' must be a number");
  return v.get<double>();
}

}  // namespace

Scenario parse_scenario(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("malformed scenario document: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("scenario document must be a JSON object");
  reject_unknown_keys(doc, "<root>", {"params", "initial_state", "controller", "integration", "output", "audit"});

  Scenario sc;
  if (const json* p = section(doc, "params")) {
    reject_unknown_keys(*p, "params", {"m", "g", "r", "mu", "ell", "legacy_potential"});
    sc.params.m = number(*p, "m", sc.params.m);
    sc.params.g = number(*p, "g", sc.params.g);
    sc.params.r = number(*p, "r", sc.params.r);
    sc.params.mu = number(*p, "mu", sc.params.mu);
    sc.params.ell = number(*p, "ell", sc.params.ell);
    if (p->contains("legacy_potential")) {
      if (!p->at("legacy_potential").is_boolean()) throw ConfigError("'legacy_potential' must be a boolean");
      sc.params.legacy_potential = p->at("legacy_potential").get<bool>();
    }
  }

  if (!doc.contains("initial_state")) throw ConfigError("missing 'initial_state'");
  const json& init = doc.at("initial_state");
  if (!init.is_array() || init.size() != 10)
    throw ConfigError("'initial_state' must be an array of exactly 10 numbers");
  for (std::size_t i = 0; i < 10; ++i) {
    if (!init[i].is_number()) throw ConfigError("'initial_state' entries must be numbers");
    sc.x0.x[static_cast<Eigen::Index>(i)] = init[i].get<double>();
  }

  if (const json* c = section(doc, "controller")) {
    reject_unknown_keys(*c, "controller", {"kind", "k_p", "k_d", "k_theta", "a", "v_ref", "clamp"});
    const std::string kind = c->value("kind", std::string("none"));
    ControllerKind k;
    try {
      k = controller_kind_from_string(kind);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
    switch (k) {
      case ControllerKind::kNone: sc.controller = ControllerSpec::none(); break;
      case ControllerKind::kCase1: sc.controller = ControllerSpec::case1(); break;
      case ControllerKind::kCase2: sc.controller = ControllerSpec::case2(); break;
      case ControllerKind::kCustom: sc.controller = ControllerSpec::custom(0, 0, 0, 0, 0); break;
    }
    const bool has_gain = c->contains("k_p") || c->contains("k_d") || c->contains("k_theta") ||
                          c->contains("a") || c->contains("v_ref");
    if (has_gain) {
      if (k == ControllerKind::kNone) throw ConfigError("controller kind 'none' takes no gains");
      sc.controller.kind = ControllerKind::kCustom;
      sc.controller.k_p = number(*c, "k_p", sc.controller.k_p);
      sc.controller.k_d = number(*c, "k_d", sc.controller.k_d);
      sc.controller.k_theta = number(*c, "k_theta", sc.controller.k_theta);
      sc.controller.a = number(*c, "a", sc.controller.a);
      sc.controller.v_ref = number(*c, "v_ref", sc.controller.v_ref);
    }
    if (c->contains("clamp")) sc.controller.clamp = number(*c, "clamp", 0.0);
  }

  if (const json* in = section(doc, "integration")) {
    reject_unknown_keys(*in, "integration", {"dt", "duration"});
    sc.dt = number(*in, "dt", sc.dt);
    sc.duration = number(*in, "duration", sc.duration);
  }

  if (const json* out = section(doc, "output")) {
    reject_unknown_keys(*out, "output", {"path", "sample_stride"});
    if (out->contains("path")) {
      if (!out->at("path").is_string()) throw ConfigError("'path' must be a string");
      sc.output_path = out->at("path").get<std::string>();
    }
    if (out->contains("sample_stride")) {
      if (!out->at("sample_stride").is_number_integer()) throw ConfigError("'sample_stride' must be an integer");
      sc.sample_stride = out->at("sample_stride").get<int>();
    }
  }

  if (const json* a = section(doc, "audit")) {
    reject_unknown_keys(*a, "audit", {"energy", "constraints"});
    sc.audit_energy = a->value("energy", true);
    sc.audit_constraints = a->value("constraints", true);
  }

  try {
    sc.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return sc;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open scenario file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

double parse_double(std::string_view text) {
  double v = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size())
    throw ConfigError("invalid number '" + std::string(text) + "'");
  return v;
}

void write_csv(std::ostream& os, const Trajectory& traj, int stride) {
  if (stride < 1) stride = 1;
  os << kCsvHeader << '\n';
  const std::size_t n = traj.samples.size();
  for (std::size_t k = 0; k < n; ++k) {
    if (k % static_cast<std::size_t>(stride) != 0 && k + 1 != n) continue;
    const Sample& s = traj.samples[k];
    std::string line = format_double(s.t);
    for (int i = 0; i < 10; ++i) {
      line += ',';
      line += format_double(s.x.x[i]);
    }
    for (double v : {s.u, s.energy, s.lambda[0], s.lambda[1]}) {
      line += ',';
      line += format_double(v);
    }
    os << line << '\n';
  }
}

void write_csv(const std::filesystem::path& path, const Trajectory& traj, int stride) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write '" + path.string() + "'");
  write_csv(out, traj, stride);
  if (!out) throw ConfigError("error while writing '" + path.string() + "'");
}

std::vector<Sample> read_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != kCsvHeader) throw ConfigError("unexpected CSV header");
  std::vector<Sample> out;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    double fields[15];
    std::size_t start = 0;
    for (int i = 0; i < 15; ++i) {
      const std::size_t end = line.find(',', start);
      if ((end == std::string::npos) != (i == 14)) throw ConfigError("CSV row must have 15 columns");
      fields[i] = parse_double(std::string_view(line).substr(start, end == std::string::npos ? end : end - start));
      start = end + 1;
    }
    Sample s;
    s.t = fields[0];
    for (int i = 0; i < 10; ++i) s.x.x[i] = fields[1 + i];
    s.u = fields[11];
    s.energy = fields[12];
    s.lambda = {fields[13], fields[14]};
    out.push_back(s);
  }
  return out;
}

}  // namespace rodwheel
