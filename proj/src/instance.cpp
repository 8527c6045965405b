#include "mesp/instance.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>
#include <vector>

#include "mesp/errors.hpp"

namespace mesp {

namespace {

// Splits a line into tokens after dropping the comment part.
std::vector<std::string> tokens_of(const std::string& line) {
  const std::string body = line.substr(0, line.find('#'));
  std::istringstream ss(body);
  std::vector<std::string> out;
  for (std::string tok; ss >> tok;) out.push_back(tok);
  return out;
}

double parse_number(const std::string& tok, int line_no) {
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(tok.c_str(), &end);
  if (end == tok.c_str() || *end != '\0' || errno == ERANGE ||
      !std::isfinite(v)) {
    throw ParseError("line " + std::to_string(line_no) + ": bad number '" +
                         tok + "'",
                     line_no);
  }
  return v;
}

}  // namespace

CovarianceModel read_matrix(std::istream& in) {
  int line_no = 0;
  int n = -1;
  int row = 0;
  Matrix C;
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    const auto toks = tokens_of(line);
    if (toks.empty()) continue;
    if (n < 0) {
      char* end = nullptr;
      const long value = std::strtol(toks[0].c_str(), &end, 10);
      if (toks.size() != 1 || *end != '\0' || value <= 0) {
        throw ParseError("line " + std::to_string(line_no) +
                             ": expected a positive dimension",
                         line_no);
      }
      n = static_cast<int>(value);
      C.resize(n, n);
      continue;
    }
    if (row >= n) {
      throw ParseError("line " + std::to_string(line_no) +
                           ": more than n rows",
                       line_no);
    }
    if (static_cast<int>(toks.size()) != n) {
      throw ParseError("line " + std::to_string(line_no) + ": expected " +
                           std::to_string(n) + " entries, found " +
                           std::to_string(toks.size()),
                       line_no);
    }
    for (int j = 0; j < n; ++j) C(row, j) = parse_number(toks[j], line_no);
    ++row;
  }
  if (n < 0) throw ParseError("empty matrix file", line_no);
  if (row != n) {
    throw ParseError("expected " + std::to_string(n) + " rows, found " +
                         std::to_string(row),
                     line_no);
  }
  return CovarianceModel(std::move(C));
}

CovarianceModel load_matrix(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open matrix file '" + path + "'");
  return read_matrix(in);
}

void write_matrix(std::ostream& out, const Matrix& C) {
  out << C.rows() << '\n';
  char buf[32];
  for (Eigen::Index i = 0; i < C.rows(); ++i) {
    for (Eigen::Index j = 0; j < C.cols(); ++j) {
      std::snprintf(buf, sizeof(buf), "%.17g", C(i, j));
      out << (j ? " " : "") << buf;
    }
    out << '\n';
  }
}

void save_matrix(const std::string& path, const Matrix& C) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write matrix file '" + path + "'");
  write_matrix(out, C);
  if (!out) throw IoError("failed writing matrix file '" + path + "'");
}

Matrix random_orthogonal(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix G(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) G(i, j) = normal(rng);
  }
  Eigen::HouseholderQR<Matrix> qr(G);
  Matrix Q = qr.householderQ();
  const Matrix R = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < n; ++j) {
    if (R(j, j) < 0.0) Q.col(j) *= -1.0;
  }
  return Q;
}

CovarianceModel instance_with_spectrum(const Vector& eigenvalues,
                                       std::uint64_t seed) {
  const int n = static_cast<int>(eigenvalues.size());
  if (n < 1) throw DomainError("instance needs at least one eigenvalue");
  const Matrix Q = random_orthogonal(n, seed);
  Matrix C = Q * eigenvalues.asDiagonal() * Q.transpose();
  return CovarianceModel(0.5 * (C + C.transpose()));
}

CovarianceModel generate_instance(int n, double kappa, std::uint64_t seed) {
  if (n < 2) throw DomainError("generate_instance: n must be >= 2");
  if (!(kappa >= 1.0) || !std::isfinite(kappa)) {
    throw DomainError("generate_instance: kappa must be >= 1");
  }
  // Spectrum and rotation come from independent streams of the same seed.
  std::mt19937_64 rng(seed ^ 0x9E3779B97F4A7C15ULL);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Vector lam(n);
  lam(0) = kappa;
  lam(n - 1) = 1.0;
  const double log_k = std::log(kappa);
  for (int i = 1; i < n - 1; ++i) lam(i) = std::exp(unit(rng) * log_k);
  return instance_with_spectrum(lam, seed);
}

}  // namespace mesp
