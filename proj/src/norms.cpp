// SPDX-License-Identifier: Apache-2.0
#include "nlscn/norms.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace nlscn {

namespace {

double quad_norm(const SparseComplexMatrix& form, const ComplexVector& v) {
  return std::sqrt(std::max(0.0, v.dot(form * v).real()));
}

}  // namespace

RelativeErrors compute_relative_errors(const FeField& u_ref, const FeField& u,
                                       const FormSet& ref_forms) {
  const FeField on_ref = prolongate(u, u_ref.mesh);
  const ComplexVector diff = u_ref.values - on_ref.values;

  const auto part = [](const ComplexVector& v, bool real_part) {
    ComplexVector out(v.size());
    for (int i = 0; i < v.size(); ++i) {
      out[i] = Complex(real_part ? v[i].real() : v[i].imag(), 0.0);
    }
    return out;
  };

  RelativeErrors errors;
  const struct {
    const SparseComplexMatrix* form;
    bool real_part;
    double* value;
    int slot;
  } columns[] = {
      {&ref_forms.mass, true, &errors.re_l2, 0},
      {&ref_forms.mass, false, &errors.im_l2, 1},
      {&ref_forms.stiffness, true, &errors.re_h1, 2},
      {&ref_forms.stiffness, false, &errors.im_h1, 3},
  };
  for (const auto& col : columns) {
    const double denom = quad_norm(*col.form, part(u_ref.values, col.real_part));
    const double numer = quad_norm(*col.form, part(diff, col.real_part));
    if (denom == 0.0) {
      errors.defined[col.slot] = false;
      *col.value = std::numeric_limits<double>::quiet_NaN();
    } else {
      *col.value = numer / denom;
    }
  }
  return errors;
}

double compute_eoc(const std::vector<double>& errors, double refinement_ratio) {
  if (errors.size() < 2) {
    throw std::domain_error("compute_eoc needs at least two errors");
  }
  if (!(refinement_ratio > 1.0)) {
    throw std::domain_error("compute_eoc needs a refinement ratio > 1");
  }
  for (double e : errors) {
    if (!(e > 0.0)) throw std::domain_error("compute_eoc needs positive errors");
  }
  double sum = 0.0;
  for (size_t i = 0; i + 1 < errors.size(); ++i) {
    sum += std::log(errors[i] / errors[i + 1]) / std::log(refinement_ratio);
  }
  return sum / static_cast<double>(errors.size() - 1);
}

void EocTable::compute_averages(double refinement_ratio) {
  eoc_defined = false;
  if (rows.size() < 2) return;
  std::array<std::vector<double>, 4> columns;
  for (const auto& r : rows) {
    columns[0].push_back(r.errors.re_l2);
    columns[1].push_back(r.errors.im_l2);
    columns[2].push_back(r.errors.re_h1);
    columns[3].push_back(r.errors.im_h1);
  }
  for (int c = 0; c < 4; ++c) {
    for (double e : columns[c]) {
      if (!(e > 0.0)) return;  // leave undefined on degenerate columns
    }
  }
  for (int c = 0; c < 4; ++c) eoc[c] = compute_eoc(columns[c], refinement_ratio);
  eoc_defined = true;
}

std::string EocTable::to_csv() const {
  std::ostringstream os;
  os << "h_rel,tau_rel,err_re_l2,err_im_l2,err_re_h1,err_im_h1\n";
  char buf[220];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                  r.h_rel, r.tau_rel, r.errors.re_l2, r.errors.im_l2,
                  r.errors.re_h1, r.errors.im_h1);
    os << buf;
  }
  if (eoc_defined) {
    std::snprintf(buf, sizeof(buf), "EOC,,%.4f,%.4f,%.4f,%.4f\n", eoc[0], eoc[1],
                  eoc[2], eoc[3]);
    os << buf;
  }
  if (!complete) os << "# incomplete\n";
  return os.str();
}

}  // namespace nlscn
