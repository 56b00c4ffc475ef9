#include "seqsteer/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <initializer_list>
#include <numbers>
#include <sstream>

namespace seqsteer {

using nlohmann::json;

namespace {

void check_keys(const json& obj, std::initializer_list<const char*> allowed, const std::string& path) {
  for (const auto& [key, _] : obj.items()) {
    bool known = false;
    for (const char* a : allowed) known = known || key == a;
    if (!known) throw InputError(path.empty() ? key : path + "." + key, "unknown key");
  }
}

const json& require_object(const json& v, const std::string& field) {
  if (!v.is_object()) throw InputError(field, "expected an object");
  return v;
}

double require_number(const json& v, const std::string& field) {
  if (!v.is_number()) throw InputError(field, "expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw InputError(field, "must be finite");
  return d;
}

SettingsSpec parse_settings(const json& v, const std::string& field) {
  SettingsSpec s;
  if (v.is_string()) {
    if (v.get<std::string>() != "mub") throw InputError(field, "expected \"mub\" or two [theta, phi] pairs");
    return s;
  }
  if (!v.is_array() || v.size() != 2) throw InputError(field, "expected \"mub\" or two [theta, phi] pairs");
  s.mub = false;
  for (std::size_t k = 0; k < 2; ++k) {
    const std::string f = field + "[" + std::to_string(k) + "]";
    if (!v[k].is_array() || v[k].size() != 2) throw InputError(f, "expected [theta, phi]");
    s.directions[k] = {parse_angle(v[k][0], f + "[0]"), parse_angle(v[k][1], f + "[1]")};
  }
  return s;
}

SettingsSpec parse_party(const json& v, const std::string& field) {
  require_object(v, field);
  check_keys(v, {"settings"}, field);
  return v.contains("settings") ? parse_settings(v["settings"], field + ".settings") : SettingsSpec{};
}

json settings_json(const SettingsSpec& s) {
  if (s.mub) return "mub";
  json arr = json::array();
  for (const auto& d : s.directions) arr.push_back(json::array({d.theta, d.phi}));
  return arr;
}

}  // namespace

double parse_number(const std::string& text, const std::string& field) {
  const char* begin = text.c_str();
  char* end = nullptr;
  const double d = std::strtod(begin, &end);
  if (text.empty() || end != begin + text.size()) throw InputError(field, "'" + text + "' is not a number");
  if (!std::isfinite(d)) throw InputError(field, "must be finite");
  return d;
}

double parse_angle(const std::string& text, const std::string& field) {
  constexpr std::string_view prefix = "deg:";
  if (text.rfind(prefix, 0) == 0) {
    return parse_number(text.substr(prefix.size()), field) * std::numbers::pi / 180.0;
  }
  return parse_number(text, field);
}

double parse_angle(const json& value, const std::string& field) {
  if (value.is_string()) {
    const auto text = value.get<std::string>();
    if (text.rfind("deg:", 0) != 0) throw InputError(field, "angle strings must start with \"deg:\"");
    return parse_angle(text, field);
  }
  return require_number(value, field);
}

const char* to_string(Mode mode) {
  switch (mode) {
    case Mode::chain: return "chain";
    case Mode::plan: return "plan";
    case Mode::unbounded: return "unbounded";
  }
  return "?";
}

const char* to_string(OutputFormat format) { return format == OutputFormat::csv ? "csv" : "json"; }

Scenario parse_scenario(const json& doc) {
  require_object(doc, "scenario");
  check_keys(doc, {"mode", "state", "alice", "bob", "eves", "targets", "unbounded", "output"}, "");
  Scenario s;

  if (!doc.contains("mode")) throw InputError("mode", "missing");
  if (!doc["mode"].is_string()) throw InputError("mode", "expected a string");
  const auto mode = doc["mode"].get<std::string>();
  if (mode == "chain")
    s.mode = Mode::chain;
  else if (mode == "plan")
    s.mode = Mode::plan;
  else if (mode == "unbounded")
    s.mode = Mode::unbounded;
  else
    throw InputError("mode", "expected chain, plan or unbounded");

  if (doc.contains("state")) {
    const json& st = require_object(doc["state"], "state");
    check_keys(st, {"kind", "theta"}, "state");
    if (!st.contains("kind") || !st["kind"].is_string()) throw InputError("state.kind", "expected \"bell\" or \"tilted\"");
    const auto kind = st["kind"].get<std::string>();
    if (kind == "bell") {
      if (st.contains("theta")) throw InputError("state.theta", "not allowed for the bell state");
      s.state.kind = StateSpec::Kind::bell;
    } else if (kind == "tilted") {
      if (!st.contains("theta")) throw InputError("state.theta", "missing");
      s.state.kind = StateSpec::Kind::tilted;
      s.state.theta = parse_angle(st["theta"], "state.theta");
      if (!(s.state.theta > 0.0 && s.state.theta <= std::numbers::pi / 4.0 + kEps)) {
        throw InputError("state.theta", "must lie in (0, pi/4]");
      }
    } else {
      throw InputError("state.kind", "expected \"bell\" or \"tilted\"");
    }
  }

  if (doc.contains("alice")) s.alice = parse_party(doc["alice"], "alice");
  if (doc.contains("bob")) s.bob = parse_party(doc["bob"], "bob");

  if (doc.contains("eves")) {
    if (!doc["eves"].is_array()) throw InputError("eves", "expected a list");
    for (std::size_t m = 0; m < doc["eves"].size(); ++m) {
      const std::string f = "eves[" + std::to_string(m) + "]";
      const json& e = require_object(doc["eves"][m], f);
      check_keys(e, {"lambda", "settings", "bias"}, f);
      EveSpec eve;
      if (!e.contains("lambda")) throw InputError(f + ".lambda", "missing");
      eve.lambda = require_number(e["lambda"], f + ".lambda");
      if (!(eve.lambda > 0.0 && eve.lambda <= 1.0)) throw InputError(f + ".lambda", "must lie in (0, 1]");
      if (e.contains("settings")) eve.settings = parse_settings(e["settings"], f + ".settings");
      if (e.contains("bias")) {
        eve.bias = require_number(e["bias"], f + ".bias");
        if (!(eve.bias >= 0.0 && eve.bias <= 1.0)) throw InputError(f + ".bias", "must lie in [0, 1]");
      }
      s.eves.push_back(eve);
    }
  }

  if (doc.contains("targets")) {
    if (!doc["targets"].is_array()) throw InputError("targets", "expected a list");
    for (std::size_t i = 0; i < doc["targets"].size(); ++i) {
      const std::string f = "targets[" + std::to_string(i) + "]";
      const double r = require_number(doc["targets"][i], f);
      if (!(r > 0.0 && r < 1.0)) throw InputError(f, "must lie in (0, 1)");
      s.targets.push_back(r);
    }
  }

  if (doc.contains("unbounded")) {
    const json& u = require_object(doc["unbounded"], "unbounded");
    check_keys(u, {"theta1", "lambdas"}, "unbounded");
    UnboundedSpec ub;
    if (!u.contains("theta1")) throw InputError("unbounded.theta1", "missing");
    ub.theta1 = parse_angle(u["theta1"], "unbounded.theta1");
    if (!(ub.theta1 > 0.0 && ub.theta1 <= std::numbers::pi / 4.0 + kEps)) {
      throw InputError("unbounded.theta1", "must lie in (0, pi/4]");
    }
    if (!u.contains("lambdas") || !u["lambdas"].is_array()) throw InputError("unbounded.lambdas", "expected a list");
    for (std::size_t i = 0; i < u["lambdas"].size(); ++i) {
      const std::string f = "unbounded.lambdas[" + std::to_string(i) + "]";
      const double l = parse_angle(u["lambdas"][i], f);
      if (!(l > 0.0 && l <= std::numbers::pi / 4.0 + kEps)) throw InputError(f, "must lie in (0, pi/4]");
      ub.lambdas.push_back(l);
    }
    if (ub.lambdas.empty()) throw InputError("unbounded.lambdas", "need at least one Eve");
    if (ub.lambdas.size() > kMaxUnboundedDepth) {
      throw InputError("unbounded.lambdas", "depth exceeds " + std::to_string(kMaxUnboundedDepth));
    }
    s.unbounded = ub;
  }

  if (doc.contains("output")) {
    const json& o = require_object(doc["output"], "output");
    check_keys(o, {"format", "path"}, "output");
    if (o.contains("format")) {
      if (o["format"] == "csv")
        s.output.format = OutputFormat::csv;
      else if (o["format"] == "json")
        s.output.format = OutputFormat::json;
      else
        throw InputError("output.format", "expected csv or json");
    }
    if (o.contains("path")) {
      if (!o["path"].is_string()) throw InputError("output.path", "expected a string");
      s.output.path = o["path"].get<std::string>();
    }
  }

  if (s.mode == Mode::plan && s.targets.empty()) throw InputError("targets", "plan mode needs at least one target");
  if (s.mode == Mode::unbounded && !s.unbounded) throw InputError("unbounded", "missing for unbounded mode");
  return s;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("scenario", "cannot open '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError("scenario", std::string("not valid JSON: ") + e.what());
  }
  return parse_scenario(doc);
}

json to_json(const Scenario& s) {
  json doc;
  doc["mode"] = to_string(s.mode);
  if (s.state.kind == StateSpec::Kind::bell)
    doc["state"] = {{"kind", "bell"}};
  else
    doc["state"] = {{"kind", "tilted"}, {"theta", s.state.theta}};
  doc["alice"] = {{"settings", settings_json(s.alice)}};
  doc["bob"] = {{"settings", settings_json(s.bob)}};
  doc["eves"] = json::array();
  for (const auto& e : s.eves) {
    doc["eves"].push_back({{"lambda", e.lambda}, {"settings", settings_json(e.settings)}, {"bias", e.bias}});
  }
  doc["targets"] = s.targets;
  if (s.unbounded) doc["unbounded"] = {{"theta1", s.unbounded->theta1}, {"lambdas", s.unbounded->lambdas}};
  doc["output"] = {{"format", to_string(s.output.format)}, {"path", s.output.path}};
  return doc;
}

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  std::string s = buf;
  return s == "-0" ? "0" : s;
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

void write_csv(std::ostream& os, const Table& t, const std::string& metadata) {
  if (!metadata.empty()) os << "# " << metadata << '\n';
  for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
  os << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) os << ',';
      if (const auto* s = std::get_if<std::string>(&row[i])) os << csv_field(*s);
      if (const auto* d = std::get_if<double>(&row[i])) os << format_number(*d);
    }
    os << '\n';
  }
}

void write_json(std::ostream& os, const Table& t) {
  using ordered = nlohmann::ordered_json;
  ordered arr = ordered::array();
  for (const auto& row : t.rows) {
    ordered obj = ordered::object();
    for (std::size_t i = 0; i < row.size() && i < t.columns.size(); ++i) {
      if (const auto* s = std::get_if<std::string>(&row[i]))
        obj[t.columns[i]] = *s;
      else if (const auto* d = std::get_if<double>(&row[i]))
        obj[t.columns[i]] = std::strtod(format_number(*d).c_str(), nullptr);
      else
        obj[t.columns[i]] = nullptr;
    }
    arr.push_back(std::move(obj));
  }
  os << arr.dump(2) << '\n';
}

}  // namespace seqsteer
