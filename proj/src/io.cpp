#include "ldo/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "ldo/catalog.hpp"
#include "ldo/errors.hpp"

namespace ldo::io {

using nlohmann::json;

namespace {

struct Ctx {
  std::string source;
  [[noreturn]] void bad(const std::string& ptr, const std::string& what) const {
    fail(ErrorKind::Config, source + ": " + (ptr.empty() ? "/" : ptr) + ": " + what);
  }
};

json parse_text(const std::string& text, const std::string& source) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    size_t line = 1, col = 1;
    for (size_t i = 0; i < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    fail(ErrorKind::Config, source + ":" + std::to_string(line) + ":" + std::to_string(col) + ": invalid JSON");
  }
}

Rational rational_at(const json& j, const std::string& ptr, const Ctx& c) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (!j.is_string()) c.bad(ptr, "expected a rational \"p/q\"");
  try {
    return parse_rational(j.get<std::string>());
  } catch (const std::exception&) {
    c.bad(ptr, "malformed rational '" + j.get<std::string>() + "'");
  }
}

std::vector<Rational> rationals_at(const json& j, const std::string& ptr, const Ctx& c) {
  if (!j.is_array()) c.bad(ptr, "expected an array of rationals");
  std::vector<Rational> out;
  for (size_t i = 0; i < j.size(); ++i) out.push_back(rational_at(j[i], ptr + "/" + std::to_string(i), c));
  return out;
}

const json& member(const json& j, const char* key, const std::string& ptr, const Ctx& c) {
  if (!j.is_object() || !j.contains(key)) c.bad(ptr, std::string("missing \"") + key + "\"");
  return j.at(key);
}

long long_at(const json& j, const std::string& ptr, const Ctx& c) {
  if (!j.is_number_integer()) c.bad(ptr, "expected an integer");
  return j.get<long>();
}

FieldElement element_at(const NumberField& k, const json& j, const std::string& ptr, const Ctx& c) {
  if (j.is_number_integer() || j.is_string()) return k.from_rational(rational_at(j, ptr, c));
  auto v = rationals_at(j, ptr, c);
  if (v.empty() || static_cast<int>(v.size()) > k.degree())
    c.bad(ptr, "coefficient vector must have 1.." + std::to_string(k.degree()) + " entries");
  v.resize(static_cast<size_t>(k.degree()), Rational(0));
  return k.from_coeffs(v);
}

json rationals_json(const std::vector<Rational>& v) {
  json a = json::array();
  for (const auto& q : v) a.push_back(format_rational(q));
  return a;
}

}  // namespace

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::Config, path + ": cannot open file");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::string element_json(const FieldElement& x) { return rationals_json(x.coeffs()).dump(); }

FieldSpec parse_field_spec(const std::string& text, const std::string& source) {
  Ctx c{source};
  json j = parse_text(text, source);
  if (!j.is_object()) c.bad("", "expected an object");
  FieldSpec s;
  const json& label = member(j, "label", "", c);
  if (!label.is_string()) c.bad("/label", "expected a string");
  s.label = label.get<std::string>();
  s.min_poly = Poly(rationals_at(member(j, "min_poly", "", c), "/min_poly", c));
  if (j.contains("units")) {
    const json& u = j["units"];
    if (!u.is_array()) c.bad("/units", "expected an array");
    for (size_t i = 0; i < u.size(); ++i) s.units.push_back(rationals_at(u[i], "/units/" + std::to_string(i), c));
  }
  if (j.contains("cm") && !j["cm"].is_null()) {
    const json& m = j["cm"];
    CmSpec cm;
    cm.subfield_poly = Poly(rationals_at(member(m, "subfield_poly", "/cm", c), "/cm/subfield_poly", c));
    cm.d = rationals_at(member(m, "d", "/cm", c), "/cm/d", c);
    cm.relative_gen = rationals_at(member(m, "relative_gen", "/cm", c), "/cm/relative_gen", c);
    s.cm = cm;
  }
  return s;
}

std::string field_spec_json(const FieldSpec& s) {
  json j;
  j["label"] = s.label;
  j["min_poly"] = rationals_json(s.min_poly.coeffs());
  j["units"] = json::array();
  for (const auto& u : s.units) j["units"].push_back(rationals_json(u));
  if (s.cm) {
    j["cm"]["subfield_poly"] = rationals_json(s.cm->subfield_poly.coeffs());
    j["cm"]["d"] = rationals_json(s.cm->d);
    j["cm"]["relative_gen"] = rationals_json(s.cm->relative_gen);
  }
  return j.dump(2);
}

NumberField load_field(const std::string& name_or_path) {
  if (catalog::has(name_or_path)) return catalog::by_name(name_or_path);
  FieldSpec s = parse_field_spec(read_file(name_or_path), name_or_path);
  try {
    return NumberField::create(s);
  } catch (const Error& e) {
    throw Error(e.kind(), name_or_path + ": " + e.what());
  }
}

MatrixK parse_matrix(const NumberField& k, const std::string& text, const std::string& source) {
  Ctx c{source};
  json j = parse_text(text, source);
  const json* rows = &j;
  std::string base;
  if (j.is_object()) {
    rows = &member(j, "rows", "", c);
    base = "/rows";
  }
  if (!rows->is_array() || rows->empty()) c.bad(base, "expected a non-empty array of rows");
  int n = static_cast<int>(rows->size());
  std::vector<FieldElement> e;
  for (int i = 0; i < n; ++i) {
    const json& r = (*rows)[static_cast<size_t>(i)];
    std::string rp = base + "/" + std::to_string(i);
    if (!r.is_array() || static_cast<int>(r.size()) != n) c.bad(rp, "row must have " + std::to_string(n) + " entries");
    for (int t = 0; t < n; ++t) e.push_back(element_at(k, r[static_cast<size_t>(t)], rp + "/" + std::to_string(t), c));
  }
  MatrixK m(k, n, e);
  if (j.is_object() && j.contains("det")) {
    FieldElement d = element_at(k, j["det"], "/det", c);
    if (mat_det(m) != d) c.bad("/det", "declared determinant does not match");
  }
  return m;
}

MatrixK load_matrix(const NumberField& k, const std::string& name_or_path, int n) {
  if (name_or_path == "id" || name_or_path == "identity") return MatrixK::identity(k, n);
  if (name_or_path == "antidiag") return MatrixK::from_weyl(k, longest_element(n));
  MatrixK m = parse_matrix(k, read_file(name_or_path), name_or_path);
  if (n > 0 && m.n() != n)
    fail(ErrorKind::Config, name_or_path + ": matrix is " + std::to_string(m.n()) + "x" + std::to_string(m.n()) +
                                ", expected n = " + std::to_string(n));
  return m;
}

std::string matrix_json(const MatrixK& m) {
  json rows = json::array();
  for (int i = 0; i < m.n(); ++i) {
    json r = json::array();
    for (int t = 0; t < m.n(); ++t) r.push_back(rationals_json(m(i, t).coeffs()));
    rows.push_back(r);
  }
  return rows.dump();
}

DecomposableForm parse_form(const NumberField& k, const std::string& text, const std::string& source) {
  Ctx c{source};
  json j = parse_text(text, source);
  long n = long_at(member(j, "n", "", c), "/n", c);
  const json& fs = member(j, "factors", "", c);
  if (!fs.is_array()) c.bad("/factors", "expected an array per place");
  if (static_cast<int>(fs.size()) != k.r())
    c.bad("/factors", "field has " + std::to_string(k.r()) + " places, form lists " + std::to_string(fs.size()));
  std::vector<std::vector<LinearForm>> factors;
  for (size_t v = 0; v < fs.size(); ++v) {
    std::string vp = "/factors/" + std::to_string(v);
    if (!fs[v].is_array()) c.bad(vp, "expected an array of linear forms");
    std::vector<LinearForm> place;
    for (size_t i = 0; i < fs[v].size(); ++i) {
      std::string ip = vp + "/" + std::to_string(i);
      const json& l = fs[v][i];
      if (!l.is_array() || static_cast<long>(l.size()) != n) c.bad(ip, "linear form must have n = " + std::to_string(n) + " coefficients");
      LinearForm lf;
      for (size_t t = 0; t < l.size(); ++t) lf.push_back(element_at(k, l[t], ip + "/" + std::to_string(t), c));
      place.push_back(lf);
    }
    factors.push_back(place);
  }
  std::vector<double> alpha;
  if (j.contains("alpha")) {
    const json& a = j["alpha"];
    if (!a.is_array() || a.size() != fs.size()) c.bad("/alpha", "expected one number per place");
    for (size_t v = 0; v < a.size(); ++v) {
      if (!a[v].is_number()) c.bad("/alpha/" + std::to_string(v), "expected a number");
      alpha.push_back(a[v].get<double>());
    }
  }
  try {
    return make_form(k, factors, alpha);
  } catch (const Error& e) {
    throw Error(e.kind(), source + ": " + e.what());
  }
}

DecomposableForm load_form(const NumberField& k, const std::string& path) { return parse_form(k, read_file(path), path); }

std::string form_json(const DecomposableForm& f) {
  json j;
  j["n"] = f.n;
  j["factors"] = json::array();
  for (const auto& place : f.factors) {
    json pl = json::array();
    for (const auto& l : place) {
      json lf = json::array();
      for (const auto& c : l) lf.push_back(rationals_json(c.coeffs()));
      pl.push_back(lf);
    }
    j["factors"].push_back(pl);
  }
  bool trivial = true;
  for (double a : f.alpha) trivial = trivial && a == 1.0;
  if (!trivial) j["alpha"] = f.alpha;
  return j.dump(2);
}

TorusPath parse_path(const std::string& text, const std::string& source) {
  Ctx c{source};
  json j = parse_text(text, source);
  TorusPath p;
  p.n = static_cast<int>(long_at(member(j, "n", "", c), "/n", c));
  if (p.n < 2) c.bad("/n", "n must be at least 2");
  const json& ex = member(j, "exponents", "", c);
  if (!ex.is_array() || ex.empty()) c.bad("/exponents", "expected a non-empty array per place");
  for (size_t v = 0; v < ex.size(); ++v) {
    std::string vp = "/exponents/" + std::to_string(v);
    if (!ex[v].is_array()) c.bad(vp, "expected an array of steps");
    std::vector<std::vector<long>> steps;
    for (size_t s = 0; s < ex[v].size(); ++s) {
      std::string sp = vp + "/" + std::to_string(s);
      const json& row = ex[v][s];
      if (!row.is_array() || static_cast<int>(row.size()) != p.n - 1)
        c.bad(sp, "expected n - 1 = " + std::to_string(p.n - 1) + " root exponents");
      std::vector<long> r;
      for (size_t t = 0; t < row.size(); ++t) r.push_back(long_at(row[t], sp + "/" + std::to_string(t), c));
      steps.push_back(r);
    }
    if (v > 0 && steps.size() != p.exponents[0].size()) c.bad(vp, "all places need the same number of steps");
    p.exponents.push_back(steps);
  }
  if (j.contains("base")) {
    const json& b = j["base"];
    if (!b.is_array() || b.size() != ex.size()) c.bad("/base", "expected one base per place");
    for (size_t v = 0; v < b.size(); ++v) {
      long x = long_at(b[v], "/base/" + std::to_string(v), c);
      if (x < 2) c.bad("/base/" + std::to_string(v), "base must be at least 2");
      p.base.push_back(x);
    }
  }
  return p;
}

TorusPath load_path(const std::string& path) { return parse_path(read_file(path), path); }

std::string path_json(const TorusPath& p) {
  json j;
  j["n"] = p.n;
  if (!p.base.empty()) j["base"] = p.base;
  j["exponents"] = p.exponents;
  return j.dump();
}

}  // namespace ldo::io
