#include "tourprof/certificate.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "tourprof/errors.hpp"
#include "tourprof/random.hpp"

namespace tourprof {

namespace {

using Matrix = Eigen::MatrixXd;

Matrix to_matrix(const std::vector<double>& q, std::size_t f) {
  Matrix m(f, f);
  for (std::size_t i = 0; i < f; ++i)
    for (std::size_t j = 0; j < f; ++j) m(i, j) = q[i * f + j];
  return m;
}

std::vector<double> from_matrix(const Matrix& m) {
  const auto f = static_cast<std::size_t>(m.rows());
  std::vector<double> q(f * f);
  for (std::size_t i = 0; i < f; ++i)
    for (std::size_t j = 0; j < f; ++j) q[i * f + j] = m(i, j);
  return q;
}

// Per-type data of the slack expression, in floating point.
struct SlackTerms {
  std::vector<double> c4;
  std::vector<double> c3;
  std::vector<Matrix> products;
};

SlackTerms slack_terms(const ProductTable& table) {
  SlackTerms terms;
  const std::size_t f = table.basis_size();
  for (std::size_t h = 0; h < table.types.size(); ++h) {
    terms.c4.push_back(to_double(table.types[h].c4_density()));
    terms.c3.push_back(to_double(table.types[h].c3_density()));
    Matrix p(f, f);
    for (std::size_t i = 0; i < f; ++i)
      for (std::size_t j = 0; j < f; ++j) p(i, j) = to_double(table.at(h, i, j));
    terms.products.push_back(std::move(p));
  }
  return terms;
}

// d_C4(H) - mu (d_C3(H) - gamma) - <Q, P_H>, without lambda.
std::vector<double> raw_slacks(const SlackTerms& terms, const Matrix& q, double mu, double gamma) {
  std::vector<double> out(terms.c4.size());
  for (std::size_t h = 0; h < out.size(); ++h)
    out[h] = terms.c4[h] - mu * (terms.c3[h] - gamma) - q.cwiseProduct(terms.products[h]).sum();
  return out;
}

double min_of(const std::vector<double>& v) { return *std::min_element(v.begin(), v.end()); }

Matrix project_psd(const Matrix& q) {
  const Matrix sym = 0.5 * (q + q.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> eig(sym);
  const Eigen::VectorXd clipped = eig.eigenvalues().cwiseMax(0.0);
  Matrix out = eig.eigenvectors() * clipped.asDiagonal() * eig.eigenvectors().transpose();
  return 0.5 * (out + out.transpose());
}

// For fixed Q, the best mu maximises the concave piecewise-linear function
// min_H (base_H - mu b_H); its maximum sits at a crossing of two pieces.
std::pair<double, double> best_mu(const SlackTerms& terms, const Matrix& q, double gamma,
                                  double current_mu) {
  const std::size_t count = terms.c4.size();
  std::vector<double> base(count), slope(count);
  for (std::size_t h = 0; h < count; ++h) {
    base[h] = terms.c4[h] - q.cwiseProduct(terms.products[h]).sum();
    slope[h] = terms.c3[h] - gamma;
  }
  const auto value = [&](double mu) {
    double m = std::numeric_limits<double>::infinity();
    for (std::size_t h = 0; h < count; ++h) m = std::min(m, base[h] - mu * slope[h]);
    return m;
  };
  double best = current_mu;
  double best_value = value(current_mu);
  for (std::size_t a = 0; a < count; ++a)
    for (std::size_t b = a + 1; b < count; ++b) {
      const double ds = slope[a] - slope[b];
      if (std::abs(ds) < 1e-15) continue;
      const double mu = (base[a] - base[b]) / ds;
      const double v = value(mu);
      if (v > best_value) {
        best_value = v;
        best = mu;
      }
    }
  return {best, best_value};
}

}  // namespace

CertificateCheck verify_certificate(const Certificate& cert, const ProductTable& table) {
  const std::size_t f = table.basis_size();
  if (cert.k != table.k || cert.f != f || cert.q.size() != f * f)
    throw DomainError("certificate dimension does not match the flag basis");

  CertificateCheck check;
  const Matrix q = to_matrix(cert.q, f);
  const double scale = 1.0 + q.cwiseAbs().maxCoeff();
  check.symmetric = (q - q.transpose()).cwiseAbs().maxCoeff() <= 1e-12 * scale;

  Eigen::SelfAdjointEigenSolver<Matrix> eig(0.5 * (q + q.transpose()), Eigen::EigenvaluesOnly);
  check.min_eigenvalue = eig.eigenvalues().minCoeff();
  const double spectral = eig.eigenvalues().cwiseAbs().maxCoeff();
  const bool psd = check.min_eigenvalue >= -kPsdTolerance * (1.0 + spectral);

  const SlackTerms terms = slack_terms(table);
  check.slacks = raw_slacks(terms, q, cert.mu, cert.gamma);
  for (double& s : check.slacks) s -= cert.lambda;
  check.min_slack = min_of(check.slacks);

  check.valid = check.symmetric && psd && check.min_slack >= -kSlackTolerance;
  check.certified_bound = check.valid ? cert.lambda : 0.0;
  return check;
}

CertificateCheck verify_certificate(const Certificate& cert) {
  if (cert.k != 3 && cert.k != 4) throw DomainError("certificates use flags of order 3 or 4");
  return verify_certificate(cert, shared_product_table(cert.k));
}

Certificate lemma1_certificate(double gamma) {
  if (!(gamma > 0.0 && gamma <= 0.25)) throw DomainError("lemma1_certificate needs 0 < gamma <= 1/4");
  const ProductTable& table = shared_product_table(3);
  const std::size_t f = table.basis_size();
  const double t = (1.0 + 8.0 * gamma) / (3.0 * gamma);
  const double scale = 6.0 / (t * t);

  // tX - Z with Z = 3X - Y + (both out) + (both in), since the four flags sum to 1.
  Eigen::VectorXd v(f);
  for (std::size_t i = 0; i < f; ++i) {
    const Flag& flag = table.flags[i];
    if (flag.tag == Flag::Tag::kX)
      v(i) = t - 3.0;
    else if (flag.tag == Flag::Tag::kY)
      v(i) = 1.0;
    else
      v(i) = -1.0;
  }

  Certificate cert;
  cert.k = 3;
  cert.f = f;
  cert.gamma = gamma;
  cert.mu = 12.0 / t - 16.0 / (t * t);
  const Matrix q = scale * v * v.transpose();
  cert.q = from_matrix(q);
  // All slacks vanish identically; absorb the rounding residue into lambda.
  cert.lambda = min_of(raw_slacks(slack_terms(table), q, cert.mu, gamma));
  return cert;
}

Certificate lift_certificate(const Certificate& cert) {
  if (cert.k != 3) throw DomainError("only order-3 certificates can be lifted");
  const ProductTable& small = shared_product_table(3);
  const std::vector<Flag>& big = shared_product_table(4).flags;
  const std::size_t fs = small.basis_size();
  const std::size_t fb = big.size();
  if (cert.f != fs) throw DomainError("certificate dimension does not match the flag basis");

  Matrix lift = Matrix::Zero(fs, fb);
  for (std::size_t b = 0; b < fb; ++b)
    for (Vertex w : {Vertex{2}, Vertex{3}}) {
      const std::vector<Vertex> keep{0, 1, w};
      lift(flag_index(small.flags, big[b].rep.induced(keep)), b) += 0.5;
    }

  Certificate out = cert;
  out.k = 4;
  out.f = fb;
  const Matrix q = lift.transpose() * to_matrix(cert.q, fs) * lift;
  out.q = from_matrix(0.5 * (q + q.transpose()));
  const SlackTerms terms = slack_terms(shared_product_table(4));
  out.lambda = min_of(raw_slacks(terms, to_matrix(out.q, fb), out.mu, out.gamma));
  return out;
}

Certificate search_certificate(double gamma, std::size_t k, const SearchOptions& options) {
  if (k != 3 && k != 4) throw DomainError("search_certificate supports k in {3, 4}");
  const ProductTable& table = shared_product_table(k);
  const std::size_t f = table.basis_size();
  const SlackTerms terms = slack_terms(table);

  Certificate best;
  best.k = k;
  best.f = f;
  best.gamma = gamma;
  best.q.assign(f * f, 0.0);
  if (gamma > 0.0 && gamma <= 0.25) {
    best = lemma1_certificate(gamma);
    if (k == 4) best = lift_certificate(best);
  }
  {
    const auto [mu, value] = best_mu(terms, to_matrix(best.q, f), gamma, best.mu);
    if (value > best.lambda) {
      best.mu = mu;
      best.lambda = value;
    }
  }

  Matrix q = to_matrix(best.q, f);
  double mu = best.mu;
  Rng rng(options.seed);
  {
    Matrix noise(f, f);
    for (std::size_t i = 0; i < f; ++i)
      for (std::size_t j = 0; j < f; ++j) noise(i, j) = rng.uniform01() - 0.5;
    q = project_psd(q + 1e-4 * (noise + noise.transpose()));
  }

  const double step0 = 0.02 * (1.0 + q.norm());
  const double temperature = 1e-3;
  for (std::size_t it = 0; it < options.iterations; ++it) {
    const std::vector<double> slack = raw_slacks(terms, q, mu, gamma);
    const double lowest = min_of(slack);
    Matrix grad = Matrix::Zero(f, f);
    double weight_sum = 0.0;
    for (std::size_t h = 0; h < slack.size(); ++h) {
      const double w = std::exp(-(slack[h] - lowest) / temperature);
      grad -= w * terms.products[h];
      weight_sum += w;
    }
    grad /= weight_sum;
    const double norm = grad.norm();
    if (norm == 0.0) break;
    const double step = step0 / std::sqrt(1.0 + static_cast<double>(it));
    q = project_psd(q + (step / norm) * grad);
    const auto [next_mu, value] = best_mu(terms, q, gamma, mu);
    mu = next_mu;
    if (value > best.lambda) {
      best.lambda = value;
      best.mu = mu;
      best.q = from_matrix(q);
    }
  }

  // Recompute lambda as the exact minimum slack for the stored data.
  best.lambda = min_of(raw_slacks(terms, to_matrix(best.q, f), best.mu, gamma));
  return best;
}

void write_certificate(std::ostream& out, const Certificate& cert) {
  out << "FLAGCERT v1 " << cert.k << ' ' << cert.f << '\n';
  out << std::setprecision(17);
  out << cert.gamma << '\n' << cert.mu << '\n' << cert.lambda << '\n';
  for (std::size_t i = 0; i < cert.f; ++i) {
    for (std::size_t j = 0; j < cert.f; ++j) {
      if (j > 0) out << ' ';
      out << cert.at(i, j);
    }
    out << '\n';
  }
}

namespace {

double parse_decimal(const std::string& token, std::size_t line) {
  try {
    std::size_t used = 0;
    const double value = std::stod(token, &used);
    if (used != token.size()) throw ParseError(line, "bad decimal '" + token + "'");
    return value;
  } catch (const std::logic_error&) {
    throw ParseError(line, "bad decimal '" + token + "'");
  }
}

}  // namespace

Certificate read_certificate(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError(1, "missing FLAGCERT header");
  std::istringstream header(line);
  std::string magic, version, trailing;
  Certificate cert;
  if (!(header >> magic >> version >> cert.k >> cert.f) || magic != "FLAGCERT" ||
      version != "v1" || (header >> trailing))
    throw ParseError(1, "expected 'FLAGCERT v1 <k> <f>'");
  if (cert.f == 0 || cert.f > 64) throw ParseError(1, "unreasonable basis size");

  double* scalars[] = {&cert.gamma, &cert.mu, &cert.lambda};
  for (std::size_t s = 0; s < 3; ++s) {
    if (!std::getline(in, line)) throw ParseError(s + 2, "missing scalar");
    std::istringstream cell(line);
    std::string token;
    if (!(cell >> token) || (cell >> trailing)) throw ParseError(s + 2, "expected one decimal");
    *scalars[s] = parse_decimal(token, s + 2);
  }
  cert.q.assign(cert.f * cert.f, 0.0);
  for (std::size_t i = 0; i < cert.f; ++i) {
    const std::size_t line_no = i + 5;
    if (!std::getline(in, line)) throw ParseError(line_no, "missing matrix row");
    std::istringstream cells(line);
    std::string token;
    for (std::size_t j = 0; j < cert.f; ++j) {
      if (!(cells >> token)) throw ParseError(line_no, "row has too few entries");
      cert.q[i * cert.f + j] = parse_decimal(token, line_no);
    }
    if (cells >> token) throw ParseError(line_no, "row has too many entries");
  }
  return cert;
}

void save_certificate(const std::filesystem::path& path, const Certificate& cert) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  write_certificate(out, cert);
}

Certificate load_certificate(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(0, "cannot open " + path.string());
  return read_certificate(in);
}

}  // namespace tourprof
