#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <vector>

#include "tourprof/flags.hpp"

namespace tourprof {

// Data witnessing c4 >= lambda + mu (c3 - gamma) over flags of order k:
// Q is a symmetric PSD f x f matrix (row-major) and, for every type H on
// 2k - 2 vertices,
//   d_C4(H) - mu (d_C3(H) - gamma) - sum_ij Q_ij p_H(i,j) - lambda >= 0.
struct Certificate {
  std::size_t k = 3;
  std::size_t f = 0;
  double gamma = 0.0;
  double mu = 0.0;
  double lambda = 0.0;
  std::vector<double> q;

  double at(std::size_t i, std::size_t j) const { return q[i * f + j]; }
};

inline constexpr double kSlackTolerance = 1e-9;
inline constexpr double kPsdTolerance = 1e-9;

struct CertificateCheck {
  bool valid = false;
  double certified_bound = 0.0;  // lambda when valid
  double min_slack = 0.0;        // min over H of the slack above
  double min_eigenvalue = 0.0;
  bool symmetric = false;
  std::vector<double> slacks;  // per type of the product table
};

// Throws DomainError when the matrix dimension does not match the basis.
CertificateCheck verify_certificate(const Certificate& cert, const ProductTable& table);
CertificateCheck verify_certificate(const Certificate& cert);

// The sum-of-squares argument behind c4 >= 18 g^2 / (1 + 8 g) at c3 = g:
// Q = s v v^T with v the coefficients of tX - Z, Z = 1 + 2(X - Y),
// t = (1 + 8g)/(3g) and s = 6/t^2. Domain 0 < g <= 1/4.
Certificate lemma1_certificate(double gamma);

// Re-expresses an order-3 certificate over the order-4 basis. Every 3-flag
// density is the average of its densities inside 4-flags, so Q4 = L^T Q3 L
// certifies the same bound.
Certificate lift_certificate(const Certificate& cert);

struct SearchOptions {
  std::size_t iterations = 2000;
  std::uint64_t seed = 0;
};

// Best-effort maximisation of lambda over (Q >= 0, mu) by projected
// supergradient ascent on min_H slack, starting from the (lifted) lemma-1
// certificate. The result always passes verify_certificate.
Certificate search_certificate(double gamma, std::size_t k, const SearchOptions& options = {});

// "FLAGCERT v1 <k> <f>", then gamma, mu, lambda on one line each, then f rows
// of f decimal entries.
void write_certificate(std::ostream& out, const Certificate& cert);
Certificate read_certificate(std::istream& in);
void save_certificate(const std::filesystem::path& path, const Certificate& cert);
Certificate load_certificate(const std::filesystem::path& path);

}  // namespace tourprof
