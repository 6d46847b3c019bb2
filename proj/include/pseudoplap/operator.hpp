#pragma once

#include "pseudoplap/grid.hpp"

namespace pseudoplap {

enum class OperatorForm { divergence, nondivergence };

std::string to_string(OperatorForm form);

/// phi_p(t) = |t|^(p-2) t.
double phi(double t, double p);

/// |t|^p.
double abs_pow(double t, double p);

/// Throws PreconditionError unless p > 2 (and finite).
void require_exponent(double p);

/// Sum_i [phi_p(D_i^+ u) - phi_p(D_i^- u)] / h on interior nodes, unset elsewhere.
ScalarField apply_divergence(const ScalarField& u, double p);

/// (p-1) Sum_i |D_i^c u|^(p-2) D_i^2 u on interior nodes, unset elsewhere.
ScalarField apply_nondivergence(const ScalarField& u, double p);

ScalarField apply(const ScalarField& u, double p, OperatorForm form);

/// max over interior nodes of |apply_form(u) - (p-1) f|.
double consistency_residual(const ScalarField& u, const ScalarField& f, double p, OperatorForm form);

/// max over interior nodes of |apply(lambda u) - lambda^(p-1) apply(u)|.
double homogeneity_check(const ScalarField& u, double p, double lambda, OperatorForm form);

/// Admissible value for homogeneity_check: 1e-10 max(1, lambda^(p-1) |apply(u)|_inf).
double homogeneity_tolerance(const ScalarField& u, double p, double lambda, OperatorForm form);

}  // namespace pseudoplap
