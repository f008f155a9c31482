#include "doctest.h"
#include "ldo/catalog.hpp"
#include "ldo/io.hpp"
#include "support.hpp"

using namespace ldo;

namespace {

std::string data(const std::string& rel) { return std::string(LDO_DATA_DIR) + "/" + rel; }

std::string config_message(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Config);
    return e.what();
  }
  FAIL("no error");
  return {};
}

}  // namespace

TEST_CASE("field files roundtrip bit-exactly") {
  for (const auto& name : catalog::names()) {
    CAPTURE(name);
    NumberField k = catalog::by_name(name);
    std::string text = io::field_spec_json(k.spec());
    FieldSpec back = io::parse_field_spec(text);
    CHECK(back.label == k.spec().label);
    CHECK(back.min_poly.coeffs() == k.min_poly().coeffs());
    CHECK(back.units == k.spec().units);
    CHECK(back.cm.has_value() == k.spec().cm.has_value());
    CHECK(io::field_spec_json(back) == text);
    NumberField from_file = io::load_field(data("fields/" + name + ".json"));
    CHECK(from_file.min_poly().coeffs() == k.min_poly().coeffs());
    CHECK(from_file.r() == k.r());
  }
  // non-integral rationals survive unchanged
  FieldSpec s = io::parse_field_spec(R"({"label":"t","min_poly":["-1/3","7/5",1],"units":[]})");
  CHECK(s.min_poly.coeffs()[0] == rat(-1, 3));
  CHECK(s.min_poly.coeffs()[1] == rat(7, 5));
}

TEST_CASE("config errors name the source location") {
  auto m = config_message([] { io::parse_field_spec("{\"label\": \"x\",\n \"min_poly\": [1, 2 3]}", "f.json"); });
  CHECK(m.find("f.json:2:") != std::string::npos);
  m = config_message([] { io::parse_field_spec(R"({"label":"x","min_poly":["1","2/0x"]})", "f.json"); });
  CHECK(m.find("f.json: /min_poly/1") != std::string::npos);
  m = config_message([] { io::parse_field_spec(R"({"min_poly":[1]})", "f.json"); });
  CHECK(m.find("label") != std::string::npos);
  auto k = catalog::q_sqrt2();
  m = config_message([&] { io::parse_matrix(k, R"([[["1"],["0"]],[["0"]]])", "m.json"); });
  CHECK(m.find("m.json: /1") != std::string::npos);
  m = config_message([&] { io::parse_matrix(k, R"([[["1","2","3"],0],[0,1]])", "m.json"); });
  CHECK(m.find("/0/0") != std::string::npos);
  m = config_message([&] { io::parse_path(R"({"n":3,"exponents":[[[1]]]})", "p.json"); });
  CHECK(m.find("/exponents/0/0") != std::string::npos);
  config_message([] { io::load_field("/nonexistent/field.json"); });
}

TEST_CASE("matrices: parse, declared determinant, names") {
  auto k = catalog::q_sqrt2();
  MatrixK g = io::parse_matrix(k, R"({"rows": [[1, ["0","1"]], [0, 1]], "det": 1})");
  CHECK(g(0, 1) == k.theta());
  CHECK(g(0, 0).is_one());
  CHECK(io::parse_matrix(k, io::matrix_json(g)) == g);
  config_message([&] { io::parse_matrix(k, R"({"rows": [[1, 1], [0, 1]], "det": 2})"); });
  CHECK(io::load_matrix(k, "id", 3) == MatrixK::identity(k, 3));
  CHECK(io::load_matrix(k, "antidiag", 3) == MatrixK::from_weyl(k, longest_element(3)));
  config_message([&] { io::load_matrix(k, data("matrices/generic-sl2.json"), 3); });
  support::Rng rng(5);
  for (int i = 0; i < 10; ++i) {
    auto h = support::random_sl(k, 3, rng);
    CHECK(io::parse_matrix(k, io::matrix_json(h)) == h);
  }
}

TEST_CASE("forms and paths roundtrip") {
  for (const auto& f : {support::density_form(), support::spectrum_form(), support::cm_form()}) {
    auto back = io::parse_form(f.field, io::form_json(f));
    CHECK(back.n == f.n);
    CHECK(back.factors.size() == f.factors.size());
    for (size_t v = 0; v < f.factors.size(); ++v)
      for (size_t i = 0; i < f.factors[v].size(); ++i) CHECK(back.factors[v][i] == f.factors[v][i]);
  }
  auto k = catalog::q_sqrt2();
  CHECK(support::kind_of([&] { io::parse_form(k, R"({"n":2,"factors":[[[1,1],[1,1]],[[1,0],[0,1]]]})"); }) ==
        ErrorKind::DependentFactors);
  config_message([&] { io::load_form(k, data("forms/density-cubic.json")); });
  auto p = support::linear_path(3, 4, {0, 2}, {0, -2});
  auto q = io::parse_path(io::path_json(p));
  CHECK(q.exponents == p.exponents);
  CHECK(q.base == p.base);
  CHECK_NOTHROW(io::load_path(data("paths/sl3-balanced.json")).validate(3, 2));
}
