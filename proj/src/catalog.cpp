#include "ldo/catalog.hpp"

#include "ldo/errors.hpp"

namespace ldo::catalog {

namespace {

Poly poly(std::initializer_list<long> c) {
  std::vector<Rational> v;
  for (long x : c) v.emplace_back(x);
  return Poly(v);
}

std::vector<Rational> vec(std::initializer_list<long> c) {
  std::vector<Rational> v;
  for (long x : c) v.emplace_back(x);
  return v;
}

}  // namespace

NumberField q_sqrt2() {
  static const NumberField k = NumberField::create({"q-sqrt2", poly({-2, 0, 1}), {vec({1, 1})}, std::nullopt});
  return k;
}

NumberField cyclic_cubic() {
  static const NumberField k =
      NumberField::create({"cyclic-cubic", poly({-1, -3, 0, 1}), {vec({0, 1, 0}), vec({-2, 0, 1})}, std::nullopt});
  return k;
}

NumberField quartic_circle() {
  static const NumberField k = NumberField::create(
      {"quartic-circle", poly({1, -2, 1, -2, 1}), {vec({0, 1, 0, 0}), vec({-1, 1, 0, 0})}, std::nullopt});
  return k;
}

NumberField q_zeta8() {
  static const NumberField k = NumberField::create(
      {"q-zeta8", poly({1, 0, 0, 0, 1}), {vec({1, 1, 0, -1})}, CmSpec{poly({-2, 0, 1}), vec({1, 0, 0, 0}), vec({0, 0, 1, 0})}});
  return k;
}

NumberField q_i() {
  static const NumberField k = NumberField::create({"q-i", poly({1, 0, 1}), {}, std::nullopt});
  return k;
}

std::vector<std::string> names() { return {"q-sqrt2", "cyclic-cubic", "quartic-circle", "q-zeta8", "q-i"}; }

bool has(const std::string& name) {
  for (const auto& n : names())
    if (n == name) return true;
  return false;
}

NumberField by_name(const std::string& name) {
  if (name == "q-sqrt2") return q_sqrt2();
  if (name == "cyclic-cubic") return cyclic_cubic();
  if (name == "quartic-circle") return quartic_circle();
  if (name == "q-zeta8") return q_zeta8();
  if (name == "q-i") return q_i();
  fail(ErrorKind::Config, "unknown builtin field '" + name + "'");
}

}  // namespace ldo::catalog
