#pragma once

#include <complex>
#include <string>
#include <vector>

#include "sra/wreath.hpp"

namespace sra {

// Floating-point representation data at finite (k, c): row-major D x D blocks
// per slot.  The group action matrices are the exact ones, embedded.
struct ContinuationResult {
    bool converged = false;
    double residual = 0.0;  // max |entry| over all relation residuals
    int iterations = 0;
    int substeps = 0;
    std::string message;
    std::complex<double> k;
    std::vector<std::complex<double>> c;  // c_1..c_{l-1}
    std::vector<std::vector<std::complex<double>>> x_ops, y_ops;
};

// Newton iteration on the full relation system starting from the k = 0
// module, walking along `direction` (a tangent vector in (khat, chat)) up to
// the given step.  Divergence past the iteration cap yields an explicit
// failure report, never a silent result.
ContinuationResult newton_continue(const InducedModule& m, const std::vector<Cyclotomic>& direction,
                                   double step, double tolerance);

// Max relation residual of explicit floating-point matrices at (k, c).
double relation_residual(const InducedModule& m, const std::vector<std::vector<std::complex<double>>>& x,
                         const std::vector<std::vector<std::complex<double>>>& y,
                         std::complex<double> k, const std::vector<std::complex<double>>& c);

}  // namespace sra
