#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ldo/matrix.hpp"

namespace ldo {

using LinearForm = std::vector<FieldElement>;  // coefficients of x_1..x_n

// f_v = alpha_v * prod_i l_i^(v) at each archimedean place v of K.
struct DecomposableForm {
  NumberField field;
  int n = 0, m = 0;
  std::vector<std::vector<LinearForm>> factors;  // [place][factor]
  std::vector<double> alpha;                     // numeric scalar per place, 1 by default

  int places() const { return static_cast<int>(factors.size()); }
  // exact prod_i l_i^(v)(z), without alpha_v
  FieldElement value(int place, const std::vector<FieldElement>& z) const;
};

DecomposableForm make_form(const NumberField& k, std::vector<std::vector<LinearForm>> factors,
                           std::vector<double> alpha = {});
// f_0 = x_1 ... x_n at every place
DecomposableForm standard_form(const NumberField& k, int n);

bool is_rational(const DecomposableForm& f);

struct FormGroupData {
  std::vector<FieldElement> alpha;  // det of the coefficient matrix per place
  std::vector<MatrixK> g;           // rows = factors, first row divided by det; det g_v = 1
};
// f_v(x) = alpha_v f_0(g_v x), verified by exact expansion
FormGroupData form_to_group(const DecomposableForm& f);

struct ReducedForm {
  DecomposableForm form;
  std::vector<std::vector<long>> phi;  // n x m integer substitution x = phi y
  int place_i = 0, factor_i = 0, place_j = 0;  // factor (place_i, factor_i) matches nothing at place_j
  long candidates_tried = 0;
};
ReducedForm reduce_variables(const DecomposableForm& f, std::uint64_t seed = 1, long budget = 10000);

// Values of f on Z[theta]^n points. Coefficient vectors are indexed var * deg + power.
struct FormScan {
  long height = 0;
  std::vector<std::vector<long>> points;
  std::vector<std::vector<std::complex<double>>> images;  // alpha_v f_v(z) per place
  std::vector<bool> degenerate;                            // some f_v(z) = 0
  std::vector<std::vector<FieldElement>> exact;            // f_v(z) per place, when requested
  bool sampled = false;
  std::size_t size() const { return points.size(); }
};

struct ScanOptions {
  long max_points = 5000000;
  bool exact = true;
  unsigned threads = 1;
};

std::vector<FieldElement> point_vector(const NumberField& k, int n, const std::vector<long>& coeffs);
// whole box of height H, zero excluded, odometer order from -H
FormScan scan_values(const DecomposableForm& f, long H, const ScanOptions& opt = {});
// `count` distinct nonzero points drawn uniformly from the height-H box, sorted
FormScan sample_values(const DecomposableForm& f, long H, long count, std::uint64_t seed, const ScanOptions& opt = {});

using Window = std::vector<std::pair<double, double>>;  // per place; |f_v|^2 at complex places
Window default_window(const DecomposableForm& f);
// the points of the height-H box whose images fall in the window; binary forms over totally
// real fields are solved place by place for the second variable, other shapes scan the box
FormScan scan_window(const DecomposableForm& f, long H, const Window& w, const ScanOptions& opt = {});

struct DensityReport {
  long cells_total = 0;
  long cells_hit = 0;
  double coverage = 0.0;
  long points_in_window = 0;
  std::vector<long> histogram;  // histogram[k] = cells holding k points (last bucket: >= size-1)
};
DensityReport density_report(const DecomposableForm& f, const FormScan& scan, const Window& w, double eps);

struct SpectrumReport {
  long height = 0;
  double bound = 10.0;
  long points = 0;             // nonzero, non-degenerate points with product in (0, B]
  std::vector<double> values;  // distinct products, ascending
  double minimum = 0.0;        // smallest product; the gap separating the spectrum from 0
  double min_spacing = 0.0;    // least difference between consecutive distinct values
};
SpectrumReport two_place_spectrum(const DecomposableForm& f, const FormScan& scan, double bound = 10.0);
// streaming version over the whole box
SpectrumReport two_place_spectrum(const DecomposableForm& f, long H, double bound = 10.0, unsigned threads = 1);

struct CmPointRecord {
  std::vector<long> point;
  bool independent = false;
  Rational norm_product;       // prod_j |det(gamma, delta)|_{v_j}, exact
  bool integral = false;       // norm_product * l^(4r) is an integer
  Interval value_product;      // prod_j |f_j(z)|_{v_j}
  bool inequality = false;
  double sine_width = 0.0;     // widest enclosure of the sine identity residual
  bool sine_ok = false;
  std::optional<FieldElement> ray_a;  // delta = a gamma
  bool degenerate_ray = false;        // gamma = 0: z = sqrt(-d) delta
};

struct CmCheckReport {
  Rational C;          // |N_F(d)| / l^(4r)
  Integer l;
  int r = 0;
  std::vector<CmPointRecord> records;
  std::vector<std::size_t> violations;
  std::vector<bool> normalized;  // place whose coefficient matrix was rescaled to det 1
  long independent = 0, rays = 0;
  double max_sine_width = 0.0;
};
CmCheckReport cm_obstruction_check(const DecomposableForm& f, const std::vector<std::vector<long>>& points,
                                   unsigned threads = 1);

}  // namespace ldo
