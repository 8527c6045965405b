#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "mesp/spectral.hpp"
#include "mesp/types.hpp"

namespace mesp {

// Plain-text matrix format: the first data line holds n, followed by n rows of
// n whitespace-separated numbers. Text after '#' is ignored on every line.
CovarianceModel read_matrix(std::istream& in);
CovarianceModel load_matrix(const std::string& path);

// Writes the format read by read_matrix with round-trip precision.
void write_matrix(std::ostream& out, const Matrix& C);
void save_matrix(const std::string& path, const Matrix& C);

// Uniformly distributed random orthogonal matrix (QR of a Gaussian matrix with
// the sign of R's diagonal folded into Q).
Matrix random_orthogonal(int n, std::uint64_t seed);

// C = Q diag(eigenvalues) Q^T with Q = random_orthogonal(n, seed).
CovarianceModel instance_with_spectrum(const Vector& eigenvalues,
                                       std::uint64_t seed);

// Synthetic instance with condition number kappa: eigenvalues log-uniform on
// [1, kappa] with the endpoints pinned to 1 and kappa.
CovarianceModel generate_instance(int n, double kappa, std::uint64_t seed);

}  // namespace mesp
