#include <CLI11.hpp>
#include <json.hpp>

#include <deque>
#include <fstream>
#include <iostream>
#include <sstream>

#include "ldo/catalog.hpp"
#include "ldo/decomp.hpp"
#include "ldo/dynamics.hpp"
#include "ldo/errors.hpp"
#include "ldo/forms.hpp"
#include "ldo/io.hpp"
#include "ldo/strata.hpp"
#include "ldo/units.hpp"
#include "ldo/version.hpp"

using namespace ldo;
using nlohmann::json;

namespace {

struct Common {
  std::string field;
  int n = 2;
  unsigned threads = 1;
  long precision = kDefaultPrecision;
  std::uint64_t seed = 1;
  std::string format = "summary";
  std::string out;
};

void add_common(CLI::App* sub, Common& c, std::vector<std::string> formats, bool with_n = true) {
  sub->add_option("--field", c.field, "catalog name or field JSON file (default: the rationals)")->envname("LDO_FIELD");
  if (with_n) sub->add_option("--n", c.n, "matrix size / number of variables")->check(CLI::Range(2, 5));
  sub->add_option("--threads", c.threads, "worker threads")->envname("LDO_THREADS")->check(CLI::Range(1, 256));
  sub->add_option("--precision", c.precision, "working precision in bits")->envname("LDO_PRECISION")->check(CLI::Range(53, 4096));
  sub->add_option("--seed", c.seed, "seed for sampling and randomized searches")->envname("LDO_SEED");
  c.format = formats.front();
  sub->add_option("--format", c.format, "output format")->check(CLI::IsMember(formats))->envname("LDO_FORMAT");
  sub->add_option("--out", c.out, "write to this file instead of stdout");
}

NumberField field_of(const Common& c) { return c.field.empty() ? NumberField::rationals() : io::load_field(c.field); }

json elem(const FieldElement& x) {
  json a = json::array();
  for (const auto& q : x.coeffs()) a.push_back(format_rational(q));
  return a;
}

json mat(const MatrixK& m) {
  json rows = json::array();
  for (int i = 0; i < m.n(); ++i) {
    json r = json::array();
    for (int j = 0; j < m.n(); ++j) r.push_back(elem(m(i, j)));
    rows.push_back(r);
  }
  return rows;
}

std::string coeff_text(const FieldElement& x) {
  std::string s;
  for (const auto& q : x.coeffs()) s += (s.empty() ? "" : " ") + format_rational(q);
  return s;
}

std::string num(double x) {
  std::ostringstream os;
  os.precision(12);
  os << x;
  return os.str();
}

RootSubset parse_psi(const std::string& s, int n) {
  RootSubset psi = RootSubset::empty(n);
  if (s.empty() || s == "none") return psi;
  if (s == "full") return RootSubset::full(n);
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    int i = 0;
    try {
      i = std::stoi(tok);
    } catch (const std::exception&) {
      fail(ErrorKind::Config, "--psi: '" + tok + "' is not a root index");
    }
    if (i < 1 || i > n - 1) fail(ErrorKind::Config, "--psi: root index " + tok + " outside 1.." + std::to_string(n - 1));
    psi.mask |= 1u << (i - 1);
  }
  return psi;
}

Window parse_window(const std::string& s, const DecomposableForm& f) {
  if (s.empty()) return default_window(f);
  Window w;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    auto colon = tok.find(':');
    if (colon == std::string::npos) fail(ErrorKind::Config, "--window: expected lo:hi, got '" + tok + "'");
    double lo = 0, hi = 0;
    try {
      lo = std::stod(tok.substr(0, colon));
      hi = std::stod(tok.substr(colon + 1));
    } catch (const std::exception&) {
      fail(ErrorKind::Config, "--window: malformed interval '" + tok + "'");
    }
    if (!(lo < hi)) fail(ErrorKind::Config, "--window: empty interval '" + tok + "'");
    w.push_back({lo, hi});
  }
  if (static_cast<int>(w.size()) != f.places())
    fail(ErrorKind::Config, "--window: " + std::to_string(w.size()) + " intervals for " + std::to_string(f.places()) + " places");
  return w;
}

// Collects one command's output; the header is derived from the config only, so reruns are byte-identical.
class Output {
 public:
  Output(const Common& c, const NumberField& k, long precision) : c_(c) {
    meta_["field"] = k.valid() ? k.label() : "Q";
    meta_["order"] = "Z[theta]";
    meta_["precision"] = precision;
    meta_["versions"] = kModuleVersions;
    meta_["seed"] = c.seed;
  }
  json& result() { return result_; }
  std::ostringstream& text() { return text_; }

  void flush() const {
    std::ostringstream os;
    std::string line = "field=" + meta_["field"].get<std::string>() + " order=Z[theta] precision=" +
                       std::to_string(meta_["precision"].get<long>()) + " seed=" + std::to_string(c_.seed) +
                       " versions=" + std::string(kModuleVersions);
    if (c_.format == "json") {
      json j;
      j["meta"] = meta_;
      j["result"] = result_;
      os << j.dump(2) << "\n";
    } else if (c_.format == "dot") {
      os << "// " << line << "\n" << text_.str();
    } else {
      os << "# " << line << "\n" << text_.str();
    }
    if (c_.out.empty()) {
      std::cout << os.str();
      std::cout.flush();
    } else {
      std::ofstream f(c_.out, std::ios::binary);
      if (!f) fail(ErrorKind::Config, c_.out + ": cannot write");
      f << os.str();
    }
  }

 private:
  const Common& c_;
  json meta_;
  json result_ = json::object();
  std::ostringstream text_;
};

std::vector<MatrixK> components(const NumberField& k, const std::vector<std::string>& g, int n) {
  if (g.empty()) fail(ErrorKind::Config, "--g: at least one matrix is required");
  std::vector<MatrixK> out;
  for (const auto& s : g) out.push_back(io::load_matrix(k, s, n));
  if (out.size() == 1)
    while (static_cast<int>(out.size()) < k.r()) out.push_back(out.front());
  if (static_cast<int>(out.size()) != k.r())
    fail(ErrorKind::Config, "--g: " + std::to_string(out.size()) + " matrices for " + std::to_string(k.r()) + " places");
  return out;
}

DecomposableForm form_of(const NumberField& k, const std::string& path, int n) {
  return path.empty() ? standard_form(k, n) : io::load_form(k, path);
}

void emit_cm(const Common& c, const NumberField& k, const DecomposableForm& f, long H, long samples) {
  ScanOptions so;
  so.exact = false;
  so.threads = c.threads;
  std::vector<std::vector<long>> pts =
      samples > 0 ? sample_values(f, H, samples, c.seed, so).points : scan_values(f, H, so).points;
  auto rep = cm_obstruction_check(f, pts, c.threads);
  long integral = 0;
  for (const auto& r : rep.records) integral += r.independent && r.integral;
  Output o(c, k, kDefaultPrecision);
  auto& res = o.result();
  res["l"] = rep.l.get_str();
  res["C"] = format_rational(rep.C);
  res["height"] = H;
  res["points"] = rep.records.size();
  res["independent"] = rep.independent;
  res["integral"] = integral;
  res["rays"] = rep.rays;
  res["violations"] = rep.violations.size();
  res["max_sine_width"] = rep.max_sine_width;
  if (c.format == "csv") {
    o.text() << "point,independent,norm_product,integral,value_lo,inequality,sine_ok\n";
    for (const auto& r : rep.records) {
      for (size_t i = 0; i < r.point.size(); ++i) o.text() << (i ? " " : "") << r.point[i];
      o.text() << "," << r.independent << "," << format_rational(r.norm_product) << "," << r.integral << ","
               << num(r.value_product.lo_d()) << "," << r.inequality << "," << r.sine_ok << "\n";
    }
  } else {
    o.text() << "cm l=" << rep.l.get_str() << " C=" << format_rational(rep.C) << " height=" << H
             << " points=" << rep.records.size() << " independent=" << rep.independent << " integral=" << integral
             << " rays=" << rep.rays << " violations=" << rep.violations.size()
             << " max_sine_width=" << num(rep.max_sine_width) << "\n";
  }
  o.flush();
  if (!rep.violations.empty()) fail(ErrorKind::InvariantViolation, "CM inequality violated at a scanned point");
}

struct Params {
  Common c;
  std::string g1 = "id", g2 = "id", h, form, path, psi, window;
  std::vector<std::string> g;
  long height = 4, samples = 12000, max_points = 5000000, budget = 10000, node_budget = 50000000;
  int place = 0, step = 0;
  double eps = 0.25, bound = 10.0, C = 4.0;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stratification, unit-closure, torus dynamics and decomposable-form diagnostics over number fields"};
  // -h stays free for the matrix option of the bruhat commands
  app.set_help_flag("--help", "print this help message and exit");
  app.require_subcommand(1);
  std::deque<std::pair<CLI::App*, Params>> leaves;
  auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& help, std::vector<std::string> formats,
                  bool with_n = true) -> Params& {
    auto* sub = parent->add_subcommand(name, help);
    leaves.push_back({sub, Params{}});
    add_common(sub, leaves.back().second.c, std::move(formats), with_n);
    return leaves.back().second;
  };
  auto sub_of = [&](const Params& p) {
    for (auto& [a, q] : leaves)
      if (&q == &p) return a;
    return static_cast<CLI::App*>(nullptr);
  };

  Params& strata = leaf(&app, "strata", "enumerate the T-orbit strata of the closure of (g1, g2)", {"summary", "json", "dot"});
  Params& closed = leaf(&app, "closed", "closedness of the T-orbit of (g1, g2) and its closed strata", {"summary", "json"});
  for (Params* p : {&strata, &closed}) {
    sub_of(*p)->add_option("--g1", p->g1, "matrix file or 'id'")->required();
    sub_of(*p)->add_option("--g2", p->g2, "matrix file or 'id'")->required();
  }

  auto* units = app.add_subcommand("units", "unit group diagnostics");
  units->require_subcommand(1);
  Params& classify = leaf(units, "classify", "closure of the unit group at one place", {"summary", "json"}, false);
  sub_of(classify)->add_option("--place", classify.place, "target place index")->required();

  auto* cm = app.add_subcommand("cm", "CM obstruction");
  cm->require_subcommand(1);
  auto* forms = app.add_subcommand("forms", "decomposable forms");
  forms->require_subcommand(1);
  Params& cmcheck = leaf(cm, "check", "check the CM lower bound on sampled lattice points", {"summary", "csv", "json"});
  Params& fcm = leaf(forms, "cm-check", "same as 'cm check'", {"summary", "csv", "json"});
  Params& fscan = leaf(forms, "scan", "values on the height-H box", {"csv", "json", "summary"});
  Params& fdens = leaf(forms, "density", "coverage of the window by values", {"summary", "json"});
  Params& fspec = leaf(forms, "spectrum", "two-place norm-product spectrum", {"summary", "csv", "json"});
  Params& fgroup = leaf(forms, "to-group", "alpha_v and g_v with f_v = alpha_v f_0(g_v x)", {"json", "summary"});
  Params& freduce = leaf(forms, "reduce", "reduce to a form in fewer variables", {"json", "summary"});
  for (Params* p : {&cmcheck, &fcm, &fscan, &fdens, &fspec, &fgroup, &freduce})
    sub_of(*p)->add_option("--form", p->form, "form JSON (default: x_1 ... x_n)");
  for (Params* p : {&cmcheck, &fcm}) {
    p->height = 10;
    sub_of(*p)->add_option("--height", p->height, "box height")->capture_default_str();
    sub_of(*p)->add_option("--samples", p->samples, "sampled points; 0 scans the whole box")->capture_default_str();
  }
  for (Params* p : {&fscan, &fdens, &fspec}) sub_of(*p)->add_option("--height", p->height, "box height")->capture_default_str();
  sub_of(fscan)->add_option("--max-points", fscan.max_points)->capture_default_str();
  sub_of(fdens)->add_option("--eps", fdens.eps, "cell size")->capture_default_str();
  sub_of(fdens)->add_option("--window", fdens.window, "lo:hi per place, comma separated (default -5:5)");
  sub_of(fspec)->add_option("--bound", fspec.bound)->capture_default_str();
  sub_of(freduce)->add_option("--budget", freduce.budget)->capture_default_str();

  auto* dyn = app.add_subcommand("dynamics", "torus orbits in the space of lattices");
  dyn->require_subcommand(1);
  Params& dsys = leaf(dyn, "systole", "systole of (t g) Z[theta]^n at one step", {"summary", "json"});
  Params& dpath = leaf(dyn, "path", "systole trace along a torus path", {"csv", "summary", "json"});
  Params& dbound = leaf(dyn, "bounded", "boundedness criterion against the systole trace", {"summary", "json", "csv"});
  for (Params* p : {&dsys, &dpath})
    sub_of(*p)->add_option("--g", p->g, "one matrix per place, or one for all places")->required();
  for (Params* p : {&dsys, &dpath, &dbound}) {
    p->height = 20;
    sub_of(*p)->add_option("--height", p->height, "coefficient height of the search")->capture_default_str();
    sub_of(*p)->add_option("--node-budget", p->node_budget)->capture_default_str();
  }
  sub_of(dsys)->add_option("--path", dsys.path, "torus path JSON (default: identity)");
  sub_of(dsys)->add_option("--step", dsys.step, "step of the path")->capture_default_str();
  sub_of(dpath)->add_option("--path", dpath.path)->required();
  sub_of(dbound)->add_option("--g1", dbound.g1)->required();
  sub_of(dbound)->add_option("--g2", dbound.g2)->required();
  sub_of(dbound)->add_option("--psi", dbound.psi, "simple roots, e.g. 1,3 ('none' for the empty set)")->required();
  sub_of(dbound)->add_option("--path", dbound.path)->required();
  sub_of(dbound)->add_option("--C", dbound.C)->capture_default_str();

  auto* bruhat = app.add_subcommand("bruhat", "Bruhat cells and block LDU");
  bruhat->require_subcommand(1);
  Params& bcell = leaf(bruhat, "cell", "w with h in B^- w B", {"summary", "json"});
  Params& bldu = leaf(bruhat, "ldu", "h = v^- l v^+ for the blocks of psi", {"json", "summary"});
  for (Params* p : {&bcell, &bldu}) sub_of(*p)->add_option("--h", p->h, "matrix file, 'id' or 'antidiag'")->required();
  sub_of(bldu)->add_option("--psi", bldu.psi)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  Params* chosen = nullptr;
  for (auto& [a, q] : leaves)
    if (a->parsed()) chosen = &q;
  if (!chosen) return 2;
  Params& p = *chosen;
  const Common& c = p.c;
  auto is = [&](const Params& q) { return &q == chosen; };

  try {
    if (is(strata) || is(closed)) {
      NumberField k = field_of(c);
      MatrixK g1 = io::load_matrix(k, p.g1, c.n), g2 = io::load_matrix(k, p.g2, c.n);
      StrataOptions so;
      so.threads = c.threads;
      StrataSet set = enumerate_strata(g1, g2, so);
      Output o(c, k, kDefaultPrecision);
      CountReport cr = verify_counts(set);
      auto& res = o.result();
      res["strata"] = cr.pairs;
      res["closed"] = cr.closed_pairs;
      res["bound"] = cr.bound;
      res["generic"] = cr.generic;
      res["orbits"] = cr.orbits;
      res["closed_orbits"] = cr.closed_orbits;
      if (is(strata)) {
        res["records"] = json::array();
        for (const auto& r : set.records) {
          json j;
          j["psi"] = r.pair.psi.str();
          j["w1"] = r.pair.w1.str();
          j["w2"] = r.pair.w2.str();
          j["closed"] = r.is_closed;
          j["orbit_class"] = r.orbit_class;
          j["rep1"] = mat(r.rep1);
          j["rep2"] = mat(r.rep2);
          res["records"].push_back(j);
        }
        res["edges"] = set.edges;
        if (c.format == "dot") {
          o.text() << strata_dot(set);
        } else {
          o.text() << strata_summary(set) << "\n";
          o.text() << "orbits=" << cr.orbits << " closed_orbits=" << cr.closed_orbits << "\n";
        }
      } else {
        bool oc = is_orbit_closed({g1, g2});
        res["orbit_closed"] = oc;
        res["closed_strata"] = json::array();
        o.text() << "orbit_closed=" << (oc ? "true" : "false") << " strata=" << cr.pairs << " closed=" << cr.closed_pairs
                 << "\n";
        for (const auto& r : closed_strata(set)) {
          res["closed_strata"].push_back({{"psi", r.pair.psi.str()}, {"w1", r.pair.w1.str()}, {"w2", r.pair.w2.str()}});
          o.text() << "closed_stratum psi=" << r.pair.psi.str() << " w1=" << r.pair.w1.str() << " w2=" << r.pair.w2.str()
                   << "\n";
        }
      }
      o.flush();
    } else if (is(classify)) {
      NumberField k = field_of(c);
      auto rep = unit_closure_classify(k, p.place, static_cast<mpfr_prec_t>(c.precision));
      Output o(c, k, c.precision);
      auto& res = o.result();
      res["closure"] = closure_name(rep.classification);
      res["place"] = rep.target_place;
      res["relations"] = rep.modulus_relations;
      res["exponent_box"] = rep.exponent_box;
      res["mesh_absolute"] = rep.mesh_absolute;
      res["mesh_relative"] = rep.mesh_relative;
      res["rationale"] = rep.rationale;
      o.text() << closure_name(rep.classification) << "\n";
      o.text() << "place=" << rep.target_place << " relations=" << rep.modulus_relations.size()
               << " mesh_absolute=" << num(rep.mesh_absolute) << " mesh_relative=" << num(rep.mesh_relative) << "\n";
      o.text() << "rationale: " << rep.rationale << "\n";
      o.flush();
    } else if (is(cmcheck) || is(fcm)) {
      NumberField k = field_of(c);
      emit_cm(c, k, form_of(k, p.form, c.n), p.height, p.samples);
    } else if (is(fscan)) {
      NumberField k = field_of(c);
      auto f = form_of(k, p.form, c.n);
      ScanOptions so;
      so.threads = c.threads;
      so.max_points = p.max_points;
      auto s = scan_values(f, p.height, so);
      Output o(c, k, kDefaultPrecision);
      auto& res = o.result();
      res["height"] = p.height;
      res["points"] = s.size();
      long degenerate = 0;
      for (bool d : s.degenerate) degenerate += d;
      res["degenerate"] = degenerate;
      if (c.format == "summary") {
        o.text() << "scan height=" << p.height << " points=" << s.size() << " degenerate=" << degenerate << "\n";
      } else {
        if (c.format == "csv") {
          o.text() << "point";
          for (int v = 0; v < f.places(); ++v) o.text() << ",exact" << v << ",image" << v;
          o.text() << ",degenerate\n";
        }
        json rows = json::array();
        for (size_t i = 0; i < s.size(); ++i) {
          if (c.format == "csv") {
            for (size_t t = 0; t < s.points[i].size(); ++t) o.text() << (t ? " " : "") << s.points[i][t];
            for (int v = 0; v < f.places(); ++v) {
              auto im = s.images[i][static_cast<size_t>(v)];
              o.text() << "," << coeff_text(s.exact[i][static_cast<size_t>(v)]) << "," << num(im.real());
              if (!k.places()[static_cast<size_t>(v)].real) o.text() << (im.imag() < 0 ? "" : "+") << num(im.imag()) << "i";
            }
            o.text() << "," << (s.degenerate[i] ? 1 : 0) << "\n";
          } else {
            json row;
            row["point"] = s.points[i];
            for (int v = 0; v < f.places(); ++v) {
              auto im = s.images[i][static_cast<size_t>(v)];
              row["exact"].push_back(elem(s.exact[i][static_cast<size_t>(v)]));
              row["image"].push_back({im.real(), im.imag()});
            }
            row["degenerate"] = static_cast<bool>(s.degenerate[i]);
            rows.push_back(row);
          }
        }
        if (c.format == "json") res["rows"] = rows;
      }
      o.flush();
    } else if (is(fdens)) {
      NumberField k = field_of(c);
      auto f = form_of(k, p.form, c.n);
      Window w = parse_window(p.window, f);
      ScanOptions so;
      so.exact = false;
      so.threads = c.threads;
      auto s = scan_window(f, p.height, w, so);
      auto rep = density_report(f, s, w, p.eps);
      Output o(c, k, kDefaultPrecision);
      auto& res = o.result();
      res["height"] = p.height;
      res["eps"] = p.eps;
      res["window"] = w;
      res["cells_total"] = rep.cells_total;
      res["cells_hit"] = rep.cells_hit;
      res["coverage"] = rep.coverage;
      res["points_in_window"] = rep.points_in_window;
      res["histogram"] = rep.histogram;
      o.text() << "density height=" << p.height << " eps=" << num(p.eps) << " cells=" << rep.cells_total
               << " hit=" << rep.cells_hit << " coverage=" << num(rep.coverage)
               << " points_in_window=" << rep.points_in_window << "\n";
      o.flush();
    } else if (is(fspec)) {
      NumberField k = field_of(c);
      auto f = form_of(k, p.form, c.n);
      auto rep = two_place_spectrum(f, p.height, p.bound, c.threads);
      Output o(c, k, kDefaultPrecision);
      auto& res = o.result();
      res["height"] = p.height;
      res["bound"] = p.bound;
      res["points"] = rep.points;
      res["distinct"] = rep.values.size();
      res["minimum"] = rep.minimum;
      res["min_spacing"] = rep.min_spacing;
      res["values"] = rep.values;
      res["evidence"] = "consistent-with";
      if (c.format == "csv") {
        o.text() << "value\n";
        for (double x : rep.values) o.text() << num(x) << "\n";
      } else {
        o.text() << "spectrum height=" << p.height << " bound=" << num(p.bound) << " points=" << rep.points
                 << " distinct=" << rep.values.size() << " minimum=" << num(rep.minimum)
                 << " min_spacing=" << num(rep.min_spacing) << " evidence=consistent-with\n";
      }
      o.flush();
    } else if (is(fgroup)) {
      NumberField k = field_of(c);
      auto g = form_to_group(form_of(k, p.form, c.n));
      Output o(c, k, kDefaultPrecision);
      auto& res = o.result();
      for (size_t v = 0; v < g.g.size(); ++v) {
        res["alpha"].push_back(elem(g.alpha[v]));
        res["g"].push_back(mat(g.g[v]));
        o.text() << "place " << v << " alpha=" << g.alpha[v].str() << " g=" << g.g[v].str() << "\n";
      }
      o.flush();
    } else if (is(freduce)) {
      NumberField k = field_of(c);
      auto f = form_of(k, p.form, c.n);
      auto r = reduce_variables(f, c.seed, p.budget);
      Output o(c, k, kDefaultPrecision);
      auto& res = o.result();
      res["phi"] = r.phi;
      res["form"] = json::parse(io::form_json(r.form));
      res["witness"] = {r.place_i, r.factor_i, r.place_j};
      res["candidates_tried"] = r.candidates_tried;
      o.text() << "reduce n=" << f.n << " m=" << r.form.n << " candidates=" << r.candidates_tried << " witness=("
               << r.place_i << "," << r.factor_i << "," << r.place_j << ")\n";
      for (const auto& row : r.phi) {
        o.text() << "phi";
        for (long x : row) o.text() << " " << x;
        o.text() << "\n";
      }
      o.flush();
    } else if (is(dsys) || is(dpath)) {
      NumberField k = field_of(c);
      auto g = components(k, p.g, c.n);
      DynamicsConfig cfg;
      cfg.height = p.height;
      cfg.threads = c.threads;
      cfg.node_budget = p.node_budget;
      Output o(c, k, kDefaultPrecision);
      auto& res = o.result();
      if (is(dsys)) {
        std::vector<std::vector<Rational>> logd(static_cast<size_t>(k.r()),
                                                std::vector<Rational>(static_cast<size_t>(c.n), Rational(0)));
        std::vector<long> base(static_cast<size_t>(k.r()), 2);
        if (!p.path.empty()) {
          TorusPath tp = io::load_path(p.path);
          tp.validate(c.n, k.r());
          if (p.step < 0 || p.step >= tp.steps()) fail(ErrorKind::Config, "--step outside the path");
          for (int v = 0; v < k.r(); ++v) {
            logd[static_cast<size_t>(v)] = tp.log_diagonal(v, p.step);
            base[static_cast<size_t>(v)] = tp.base_of(v);
          }
        }
        auto s = systole(g, logd, base, cfg);
        res["value"] = s.value_d;
        res["interval"] = {s.value.lo_d(), s.value.hi_d()};
        res["lower_bound"] = s.lower_bound;
        res["complete"] = s.complete;
        for (const auto& w : s.witness) res["witness"].push_back(elem(w));
        o.text() << "systole=" << num(s.value_d) << " interval=[" << num(s.value.lo_d()) << "," << num(s.value.hi_d())
                 << "] lower_bound=" << num(s.lower_bound) << " complete=" << (s.complete ? "true" : "false") << "\n";
        o.text() << "witness";
        for (const auto& w : s.witness) o.text() << " (" << coeff_text(w) << ")";
        o.text() << "\n";
      } else {
        auto t = run_path(g, io::load_path(p.path), cfg);
        res["verdict"] = t.verdict;
        res["minimum"] = t.minimum;
        res["decreasing_after_burn_in"] = t.decreasing_after_burn_in;
        res["trace"] = trace_csv(t);
        if (c.format == "csv")
          o.text() << trace_csv(t);
        else
          o.text() << "verdict=" << t.verdict << " minimum=" << num(t.minimum)
                   << " final=" << num(t.values.empty() ? 0.0 : t.values.back().value_d) << "\n";
      }
      o.flush();
    } else if (is(dbound)) {
      NumberField k = field_of(c);
      MatrixK g1 = io::load_matrix(k, p.g1, c.n), g2 = io::load_matrix(k, p.g2, c.n);
      DynamicsConfig cfg;
      cfg.height = p.height;
      cfg.threads = c.threads;
      cfg.node_budget = p.node_budget;
      auto r = check_boundedness(g1, g2, parse_psi(p.psi, c.n), io::load_path(p.path), p.C, cfg);
      Output o(c, k, kDefaultPrecision);
      auto& res = o.result();
      res["membership"] = r.membership;
      res["condition_ii"] = r.condition_ii;
      res["product_inf"] = r.product_inf;
      res["product_sup"] = r.product_sup;
      res["predicted_bounded"] = r.predicted_bounded;
      res["verdict"] = r.trace.verdict;
      res["agrees"] = r.agrees;
      res["note"] = r.note;
      if (c.format == "csv") {
        o.text() << trace_csv(r.trace);
      } else {
        o.text() << "membership=" << (r.membership ? "true" : "false")
                 << " condition_ii=" << (r.condition_ii ? "true" : "false")
                 << " predicted=" << (r.predicted_bounded ? "bounded" : "unbounded") << " verdict=" << r.trace.verdict
                 << " agrees=" << (r.agrees ? "true" : "false") << "\n";
        if (!r.note.empty()) o.text() << "note: " << r.note << "\n";
      }
      o.flush();
    } else if (is(bcell) || is(bldu)) {
      NumberField k = field_of(c);
      MatrixK h = io::load_matrix(k, p.h, c.n);
      Output o(c, k, kDefaultPrecision);
      auto& res = o.result();
      if (is(bcell)) {
        WeylElement w = bruhat_cell(h);
        bool longest = w == longest_element(h.n());
        res["w"] = w.str();
        res["longest"] = longest;
        o.text() << "w=" << w.str() << " longest=" << (longest ? "true" : "false") << "\n";
      } else {
        auto d = block_ldu(h, parse_psi(p.psi, h.n()));
        res["exists"] = d.has_value();
        if (d) {
          res["v_minus"] = mat(d->v_minus);
          res["levi"] = mat(d->levi);
          res["v_plus"] = mat(d->v_plus);
          o.text() << "v_minus=" << d->v_minus.str() << "\nlevi=" << d->levi.str() << "\nv_plus=" << d->v_plus.str() << "\n";
        } else {
          o.text() << "ldu=absent\n";
        }
      }
      o.flush();
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return is_invariant_violation(e.kind()) ? 3 : 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
