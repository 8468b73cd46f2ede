#include "macdecay/io.hpp"

#include <cstdio>
#include <sstream>

namespace macdecay {

namespace {

BigRat rat_from_json(const json& j) {
  if (j.is_number_integer()) return BigRat(j.get<long>());
  if (j.is_string()) {
    BigRat r;
    if (r.set_str(j.get<std::string>(), 10) != 0) throw ConfigError("not a rational number: " + j.get<std::string>());
    r.canonicalize();
    return r;
  }
  throw ConfigError("expected an integer or rational string, got " + j.dump());
}

std::string rat_str(const BigRat& r) { return r.get_str(); }

}  // namespace

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

QuadElem parse_quad_text(const std::string& s, RingTag field) {
  std::string t;
  for (char ch : s)
    if (ch != ' ') t += ch;
  if (t == "sqrt-3" || t == "sqrt(-3)") {
    if (field != RingTag::Eisenstein) throw ConfigError("sqrt-3 only lies in Q(sqrt-3)");
    return {BigRat(-1), BigRat(2), field};
  }
  auto parse_int = [&](const std::string& x) -> BigInt {
    if (x.empty() || x == "+") return 1;
    if (x == "-") return -1;
    BigInt v;
    if (v.set_str(x[0] == '+' ? x.substr(1) : x, 10) != 0) throw ConfigError("cannot parse '" + s + "' as an element of " + field_name(field));
    return v;
  };
  if (t.empty()) throw ConfigError("empty quadratic element");
  const char unit = field == RingTag::Eisenstein ? 'w' : 'i';
  if (t.back() != 'i' && t.back() != 'w') return {BigRat(parse_int(t)), BigRat(0), field};
  if (t.back() != unit) throw ConfigError("'" + s + "' uses the wrong generator for " + field_name(field));
  t.pop_back();
  std::size_t split = t.find_last_of("+-");
  if (split == std::string::npos || split == 0) return {BigRat(0), BigRat(parse_int(t)), field};
  return {BigRat(parse_int(t.substr(0, split))), BigRat(parse_int(t.substr(split))), field};
}

json quad_to_json(const QuadElem& x) { return json::array({rat_str(x.a()), rat_str(x.b())}); }

QuadElem quad_from_json(const json& j, RingTag field) {
  if (j.is_array()) {
    if (j.size() != 2) throw ConfigError("quadratic element needs [a, b]: " + j.dump());
    return {rat_from_json(j[0]), rat_from_json(j[1]), field};
  }
  if (j.is_string() && j.get<std::string>().find_first_of("iws") != std::string::npos) return parse_quad_text(j.get<std::string>(), field);
  return {rat_from_json(j), BigRat(0), field};
}

json field_elem_to_json(const FieldElem& x) {
  json out = json::array();
  for (const auto& c : x.coords()) out.push_back(quad_to_json(c));
  return out;
}

FieldElem field_elem_from_json(const TowerPtr& t, const json& j) {
  if (j.is_object() && j.contains("basis")) {
    std::vector<long> v;
    try {
      v = j.at("basis").get<std::vector<long>>();
    } catch (const json::exception& e) {
      throw ConfigError(std::string("basis coefficients: ") + e.what());
    }
    if (static_cast<int>(v.size()) != 2 * t->degree())
      throw ConfigError("basis form needs " + std::to_string(2 * t->degree()) + " integers: " + j.dump());
    return FieldElem::from_basis_coeffs(t, v);
  }
  if (j.is_number_integer() || j.is_string()) return FieldElem::scalar(t, quad_from_json(j, t->field()));
  if (!j.is_array() || static_cast<int>(j.size()) != t->degree())
    throw ConfigError("field element needs " + std::to_string(t->degree()) + " coordinates: " + j.dump());
  std::vector<QuadElem> c;
  for (const auto& e : j) c.push_back(quad_from_json(e, t->field()));
  return {t, std::move(c)};
}

json tower_to_json(const Tower& t) {
  json f = json::array();
  for (const auto& c : t.f().coeffs()) f.push_back(c.a().get_den() == 1 ? json(c.a().get_num().get_str()) : json(rat_str(c.a())));
  json g = json::array();
  for (const auto& c : t.sigma_image().coeffs()) g.push_back(rat_str(c));
  json hint;
  if (t.hint().value) {
    hint["value"] = *t.hint().value;
  } else {
    hint = {{"m", t.hint().m}, {"H", t.hint().subgroup_gens}, {"coset", t.hint().coset}};
  }
  return {{"K", field_name(t.field())},
          {"f", f},
          {"sigma_image", g},
          {"U", t.users()},
          {"n_t", t.antennas()},
          {"theta_numeric_hint", hint},
          {"precision_bits", t.precision_bits()}};
}

TowerParams tower_params_from_json(const json& j) {
  try {
    TowerParams p;
    p.field = parse_field_name(j.at("K").get<std::string>());
    std::vector<QuadElem> f;
    for (const auto& c : j.at("f")) f.emplace_back(rat_from_json(c), BigRat(0), p.field);
    p.f = Poly<QuadElem>(std::move(f));
    std::vector<BigRat> g;
    for (const auto& c : j.at("sigma_image")) g.push_back(rat_from_json(c));
    p.sigma_image = Poly<BigRat>(std::move(g));
    p.users = j.at("U").get<int>();
    p.antennas = j.at("n_t").get<int>();
    const auto& h = j.at("theta_numeric_hint");
    if (h.is_number()) {
      p.hint.value = h.get<double>();
    } else if (h.contains("value")) {
      p.hint.value = h.at("value").get<double>();
    } else {
      p.hint.m = h.at("m").get<int>();
      p.hint.subgroup_gens = h.at("H").get<std::vector<int>>();
      p.hint.coset = h.value("coset", 1);
    }
    p.precision_bits = j.value("precision_bits", 256);
    return p;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("tower JSON: ") + e.what());
  } catch (const PreconditionError& e) {
    throw ConfigError(std::string("tower JSON: ") + e.what());
  }
}

json codespec_to_json(const CodeSpec& s) {
  const auto& c = s.certificate();
  return {{"tower", tower_to_json(*s.tower())},
          {"p", quad_to_json(s.p())},
          {"p_display", s.p().to_string()},
          {"k", s.k()},
          {"inert_certificate",
           {{"residue_order", c.residue_order.get_str()}, {"disc_valuation", c.disc_valuation}, {"irreducible_mod_p", c.irreducible_mod_p}}}};
}

json codeword_to_json(int user, std::span<const long> coeffs) {
  return {{"user", user}, {"coeffs", std::vector<long>(coeffs.begin(), coeffs.end())}};
}

std::pair<int, std::vector<long>> codeword_from_json(const json& j) {
  try {
    return {j.at("user").get<int>(), j.at("coeffs").get<std::vector<long>>()};
  } catch (const json::exception& e) {
    throw ConfigError(std::string("codeword JSON: ") + e.what());
  }
}

std::vector<std::vector<long>> read_coeff_csv(std::istream& in) {
  std::vector<std::vector<long>> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto h = line.find('#'); h != std::string::npos) line.erase(h);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::vector<long> v;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      try {
        std::size_t pos = 0;
        v.push_back(std::stol(cell, &pos));
        if (cell.find_first_not_of(" \t\r", pos) != std::string::npos) throw std::invalid_argument(cell);
      } catch (const std::logic_error&) {
        throw ConfigError("coefficient CSV line " + std::to_string(lineno) + ": bad integer '" + cell + "'");
      }
    }
    out.push_back(std::move(v));
  }
  return out;
}

namespace {

std::string join_box(const CoeffBox& box) {
  std::string s;
  for (const auto& v : box)
    for (long x : v) {
      if (!s.empty()) s += ';';
      s += std::to_string(x);
    }
  return s;
}

std::string radius_str(double r) {
  char buf[64];
  // %.3e rounds to nearest; nudge up so the printed radius stays an upper bound.
  std::snprintf(buf, sizeof buf, "%.3e", r * (1 + 1e-3));
  return buf;
}

}  // namespace

std::string decay_csv(std::span<const DecayReport> curve, bool timing) {
  std::string out = "N,D_value,error_radius,mode,samples,argmin_coeffs,wall_time_ms\n";
  for (const auto& r : curve) {
    out += std::to_string(r.bounds.at(0)) + "," + r.d_value.mid + "," + radius_str(r.d_value.radius) + "," + mode_name(r.mode) + "," +
           std::to_string(r.samples) + "," + join_box(r.argmin) + ",";
    if (timing) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.1f", r.wall_time_ms);
      out += buf;
    }
    out += "\n";
  }
  return out;
}

json decay_report_to_json(const DecayReport& r, bool timing) {
  json j = {{"bounds", r.bounds},
            {"mode", mode_name(r.mode)},
            {"samples", r.samples},
            {"seed", r.seed},
            {"evaluated", r.evaluated},
            {"D_value", r.d_value.mid},
            {"error_radius", radius_str(r.d_value.radius)},
            {"argmin", r.argmin},
            {"exact_det", {{"numerator", field_elem_to_json(r.exact_det.num)}, {"p_exponent", r.exact_det.p_exp}}},
            {"abs2_numerator", [&] {
               json a = json::array();
               for (const auto& c : abs2_coords(r.exact_det.num)) a.push_back(rat_str(c));
               return a;
             }()}};
  if (timing) j["wall_time_ms"] = r.wall_time_ms;
  return j;
}

}  // namespace macdecay
