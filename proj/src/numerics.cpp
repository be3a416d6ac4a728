#include "dirlap/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "dirlap/detail/tarjan.hpp"
#include "dirlap/errors.hpp"

namespace dirlap {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

double sign_of(double magnitude, double sign) { return sign >= 0.0 ? std::abs(magnitude) : -std::abs(magnitude); }

/// Parlett-Reinsch diagonal similarity scaling by powers of two.
void balance(Matrix& a) {
  constexpr double radix = 2.0;
  constexpr double radix_sq = radix * radix;
  const std::size_t n = a.rows();
  bool done = false;
  while (!done) {
    done = true;
    for (std::size_t i = 0; i < n; ++i) {
      double r = 0.0, c = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        c += std::abs(a(j, i));
        r += std::abs(a(i, j));
      }
      if (c == 0.0 || r == 0.0) continue;
      double g = r / radix;
      double f = 1.0;
      const double s = c + r;
      while (c < g) {
        f *= radix;
        c *= radix_sq;
      }
      g = r * radix;
      while (c > g) {
        f /= radix;
        c /= radix_sq;
      }
      if ((c + r) / f < 0.95 * s) {
        done = false;
        g = 1.0 / f;
        for (std::size_t j = 0; j < n; ++j) a(i, j) *= g;
        for (std::size_t j = 0; j < n; ++j) a(j, i) *= f;
      }
    }
  }
}

/// Orthogonal reduction to upper Hessenberg form by Householder reflections.
void reduce_to_hessenberg(Matrix& a) {
  const std::size_t n = a.rows();
  if (n < 3) return;
  std::vector<double> ort(n, 0.0);
  for (std::size_t m = 1; m + 1 < n; ++m) {
    double scale = 0.0;
    for (std::size_t i = m; i < n; ++i) scale += std::abs(a(i, m - 1));
    if (scale == 0.0) continue;
    double h = 0.0;
    for (std::size_t i = n; i-- > m;) {
      ort[i] = a(i, m - 1) / scale;
      h += ort[i] * ort[i];
    }
    double g = std::sqrt(h);
    if (ort[m] > 0.0) g = -g;
    h -= ort[m] * g;
    ort[m] -= g;
    for (std::size_t j = m; j < n; ++j) {
      double f = 0.0;
      for (std::size_t i = n; i-- > m;) f += ort[i] * a(i, j);
      f /= h;
      for (std::size_t i = m; i < n; ++i) a(i, j) -= f * ort[i];
    }
    for (std::size_t i = 0; i < n; ++i) {
      double f = 0.0;
      for (std::size_t j = n; j-- > m;) f += ort[j] * a(i, j);
      f /= h;
      for (std::size_t j = m; j < n; ++j) a(i, j) -= f * ort[j];
    }
    ort[m] *= scale;
    a(m, m - 1) = scale * g;
  }
  for (std::size_t i = 2; i < n; ++i)
    for (std::size_t j = 0; j + 1 < i; ++j) a(i, j) = 0.0;
}

/// Subdiagonal entry h(l, l-1) is negligible (LAPACK dlahqr criterion).
bool negligible_subdiagonal(const Matrix& a, int l, int nn, double smlnum) {
  const double h = std::abs(a(l, l - 1));
  if (h <= smlnum) return true;
  double tst = std::abs(a(l - 1, l - 1)) + std::abs(a(l, l));
  if (tst == 0.0) {
    if (l - 2 >= 0) tst += std::abs(a(l - 1, l - 2));
    if (l + 1 <= nn) tst += std::abs(a(l + 1, l));
  }
  if (h > kEps * tst) return false;
  const double up = std::abs(a(l - 1, l));
  const double ab = std::max(h, up);
  const double ba = std::min(h, up);
  const double diff = std::abs(a(l - 1, l - 1) - a(l, l));
  const double aa = std::max(std::abs(a(l, l)), diff);
  const double bb = std::min(std::abs(a(l, l)), diff);
  const double s = aa + ab;
  return ba * (ab / s) <= std::max(smlnum, kEps * (bb * (aa / s)));
}

/// Francis implicit double-shift QR on an upper Hessenberg matrix.
std::vector<Complex> hessenberg_qr(Matrix& a, int max_iterations) {
  const int n = static_cast<int>(a.rows());
  std::vector<Complex> roots(n);
  const double smlnum = std::numeric_limits<double>::min() * (static_cast<double>(n) / kEps);

  int nn = n - 1;
  int total = 0;
  double t = 0.0;
  while (nn >= 0) {
    int its = 0;
    int l = 0;
    do {
      for (l = nn; l > 0; --l) {
        if (negligible_subdiagonal(a, l, nn, smlnum)) {
          a(l, l - 1) = 0.0;
          break;
        }
      }
      double x = a(nn, nn);
      if (l == nn) {
        roots[nn] = Complex(x + t, 0.0);
        --nn;
        continue;
      }
      double y = a(nn - 1, nn - 1);
      double w = a(nn, nn - 1) * a(nn - 1, nn);
      if (l == nn - 1) {
        const double p = 0.5 * (y - x);
        const double q = p * p + w;
        double z = std::sqrt(std::abs(q));
        x += t;
        if (q >= 0.0) {
          z = p + sign_of(z, p);
          roots[nn - 1] = roots[nn] = Complex(x + z, 0.0);
          if (z != 0.0) roots[nn] = Complex(x - w / z, 0.0);
        } else {
          roots[nn] = Complex(x + p, -z);
          roots[nn - 1] = std::conj(roots[nn]);
        }
        nn -= 2;
        continue;
      }

      if (total >= max_iterations) {
        throw ConvergenceError("QR iteration did not converge after " + std::to_string(total) + " iterations");
      }
      if (its > 0 && its % 10 == 0) {
        // exceptional shift
        t += x;
        for (int i = 0; i <= nn; ++i) a(i, i) -= x;
        const double s = std::abs(a(nn, nn - 1)) + std::abs(a(nn - 1, nn - 2));
        y = x = 0.75 * s;
        w = -0.4375 * s * s;
      }
      ++its;
      ++total;

      int m = nn - 2;
      double p = 0.0, q = 0.0, r = 0.0, z = 0.0;
      for (; m >= l; --m) {
        z = a(m, m);
        r = x - z;
        double s = y - z;
        p = (r * s - w) / a(m + 1, m) + a(m, m + 1);
        q = a(m + 1, m + 1) - z - r - s;
        r = a(m + 2, m + 1);
        s = std::abs(p) + std::abs(q) + std::abs(r);
        p /= s;
        q /= s;
        r /= s;
        if (m == l) break;
        const double u = std::abs(a(m, m - 1)) * (std::abs(q) + std::abs(r));
        const double v = std::abs(p) * (std::abs(a(m - 1, m - 1)) + std::abs(z) + std::abs(a(m + 1, m + 1)));
        if (u <= kEps * v) break;
      }
      for (int i = m; i < nn - 1; ++i) {
        a(i + 2, i) = 0.0;
        if (i != m) a(i + 2, i - 1) = 0.0;
      }
      for (int k = m; k < nn; ++k) {
        if (k != m) {
          p = a(k, k - 1);
          q = a(k + 1, k - 1);
          r = 0.0;
          if (k + 1 != nn) r = a(k + 2, k - 1);
          x = std::abs(p) + std::abs(q) + std::abs(r);
          if (x != 0.0) {
            p /= x;
            q /= x;
            r /= x;
          }
        }
        const double s = sign_of(std::sqrt(p * p + q * q + r * r), p);
        if (s == 0.0) continue;
        if (k == m) {
          if (l != m) a(k, k - 1) = -a(k, k - 1);
        } else {
          a(k, k - 1) = -s * x;
        }
        p += s;
        x = p / s;
        y = q / s;
        z = r / s;
        q /= p;
        r /= p;
        for (int j = k; j <= nn; ++j) {
          p = a(k, j) + q * a(k + 1, j);
          if (k + 1 != nn) {
            p += r * a(k + 2, j);
            a(k + 2, j) -= p * z;
          }
          a(k + 1, j) -= p * y;
          a(k, j) -= p * x;
        }
        const int mmin = nn < k + 3 ? nn : k + 3;
        for (int i = l; i <= mmin; ++i) {
          p = x * a(i, k) + y * a(i, k + 1);
          if (k + 1 != nn) {
            p += z * a(i, k + 2);
            a(i, k + 2) -= p * r;
          }
          a(i, k + 1) -= p * q;
          a(i, k) -= p;
        }
      }
    } while (l + 1 < nn);
  }
  return roots;
}

std::vector<Complex> irreducible_block_eigenvalues(Matrix block, const EigenOptions& options) {
  const std::size_t n = block.rows();
  if (n == 1) return {Complex(block(0, 0), 0.0)};
  if (options.balance) balance(block);
  reduce_to_hessenberg(block);
  return hessenberg_qr(block, options.iteration_factor * static_cast<int>(n));
}

bool complex_less(const Complex& a, const Complex& b) {
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() < b.imag();
}

}  // namespace

std::vector<Complex> eigenvalues(const Matrix& m, const EigenOptions& options) {
  if (!m.square()) throw ValidationError("eigenvalues of a non-square matrix");
  for (double x : m.data())
    if (!std::isfinite(x)) throw ValidationError("matrix has non-finite entries");
  const std::size_t n = m.rows();
  std::vector<Complex> result;
  result.reserve(n);
  if (n == 0) return result;

  std::vector<std::vector<std::size_t>> blocks;
  if (options.split_reducible) {
    std::vector<std::vector<std::size_t>> pattern(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j && m(i, j) != 0.0) pattern[i].push_back(j);
    blocks = detail::tarjan_scc(pattern);
  } else {
    blocks.emplace_back(n);
    for (std::size_t i = 0; i < n; ++i) blocks.front()[i] = i;
  }
  for (const auto& idx : blocks) {
    const auto part = irreducible_block_eigenvalues(m.select(idx, idx), options);
    result.insert(result.end(), part.begin(), part.end());
  }
  for (Complex& z : result) {
    if (z.real() == 0.0) z = Complex(0.0, z.imag());
    if (z.imag() == 0.0) z = Complex(z.real(), 0.0);
  }
  std::sort(result.begin(), result.end(), complex_less);
  return result;
}

Tolerances default_tolerances(const Matrix& m) {
  const double fro = m.frobenius_norm();
  const double n = static_cast<double>(std::max(m.rows(), m.cols()));
  Tolerances t;
  t.rank = std::max(1e-12, n * kEps * fro);
  t.zero = std::max(1e-8, 1e3 * t.rank);
  t.scale = std::max(1.0, fro);
  return t;
}

namespace {

struct PivotedQr {
  std::vector<double> r_diagonal;
  Matrix q;  // full orthogonal factor
};

PivotedQr pivoted_qr(Matrix a) {
  const std::size_t rows = a.rows();
  const std::size_t cols = a.cols();
  const std::size_t steps = std::min(rows, cols);
  std::vector<std::vector<double>> reflectors;
  PivotedQr out;
  for (std::size_t k = 0; k < steps; ++k) {
    std::size_t best = k;
    double best_norm = -1.0;
    for (std::size_t j = k; j < cols; ++j) {
      double s = 0.0;
      for (std::size_t i = k; i < rows; ++i) s += a(i, j) * a(i, j);
      if (s > best_norm) {
        best_norm = s;
        best = j;
      }
    }
    if (best != k)
      for (std::size_t i = 0; i < rows; ++i) std::swap(a(i, k), a(i, best));

    std::vector<double> v(rows - k);
    double norm_x = 0.0;
    for (std::size_t i = k; i < rows; ++i) {
      v[i - k] = a(i, k);
      norm_x += v[i - k] * v[i - k];
    }
    norm_x = std::sqrt(norm_x);
    if (norm_x == 0.0) {
      out.r_diagonal.push_back(0.0);
      reflectors.emplace_back();
      continue;
    }
    const double alpha = v[0] > 0.0 ? -norm_x : norm_x;
    v[0] -= alpha;
    double vnorm = 0.0;
    for (double x : v) vnorm += x * x;
    vnorm = std::sqrt(vnorm);
    for (double& x : v) x /= vnorm;
    for (std::size_t j = k; j < cols; ++j) {
      double dot = 0.0;
      for (std::size_t i = k; i < rows; ++i) dot += v[i - k] * a(i, j);
      for (std::size_t i = k; i < rows; ++i) a(i, j) -= 2.0 * dot * v[i - k];
    }
    out.r_diagonal.push_back(a(k, k));
    reflectors.push_back(std::move(v));
  }

  out.q = Matrix::identity(rows);
  for (std::size_t k = reflectors.size(); k-- > 0;) {
    const auto& v = reflectors[k];
    if (v.empty()) continue;
    for (std::size_t j = 0; j < rows; ++j) {
      double dot = 0.0;
      for (std::size_t i = k; i < rows; ++i) dot += v[i - k] * out.q(i, j);
      for (std::size_t i = k; i < rows; ++i) out.q(i, j) -= 2.0 * dot * v[i - k];
    }
  }
  return out;
}

std::size_t numerical_rank(const std::vector<double>& r_diagonal, double tol) {
  std::size_t r = 0;
  while (r < r_diagonal.size() && std::abs(r_diagonal[r]) > tol) ++r;
  return r;
}

}  // namespace

KernelResult kernel_and_rank(const Matrix& m, std::optional<double> tolerance) {
  const double tol = tolerance.value_or(default_tolerances(m).rank);
  if (!(tol > 0.0)) throw ValidationError("rank tolerance must be positive");
  const PivotedQr qr = pivoted_qr(m.transposed());
  KernelResult result;
  result.tolerance = tol;
  result.rank = numerical_rank(qr.r_diagonal, tol);
  result.stable = numerical_rank(qr.r_diagonal, tol / 10.0) == result.rank &&
                  numerical_rank(qr.r_diagonal, tol * 10.0) == result.rank;
  const std::size_t n = m.cols();
  for (std::size_t j = result.rank; j < n; ++j) {
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = qr.q(i, j);
    result.basis.push_back(std::move(v));
  }
  return result;
}

namespace {

double zero_threshold(const Matrix& m, std::optional<double> relative_tolerance) {
  const Tolerances t = default_tolerances(m);
  if (relative_tolerance) {
    if (!(*relative_tolerance > 0.0)) throw ValidationError("tolerance must be positive");
    return *relative_tolerance * t.scale;
  }
  return t.zero;
}

std::size_t count_small(const std::vector<Complex>& values, double threshold) {
  return static_cast<std::size_t>(
      std::count_if(values.begin(), values.end(), [&](const Complex& z) { return std::abs(z) < threshold; }));
}

}  // namespace

std::size_t zero_multiplicity(const Matrix& m, Multiplicity mode, std::optional<double> relative_tolerance) {
  if (!m.square()) throw ValidationError("zero multiplicity of a non-square matrix");
  const double threshold = zero_threshold(m, relative_tolerance);
  if (mode == Multiplicity::algebraic) return count_small(eigenvalues(m), threshold);
  const KernelResult k = kernel_and_rank(m, threshold);
  return m.cols() - k.rank;
}

SpectralReport spectral_report(const Matrix& m, std::optional<double> relative_tolerance, const EigenOptions& options) {
  if (!m.square()) throw ValidationError("spectrum of a non-square matrix");
  SpectralReport report;
  report.tolerance = zero_threshold(m, relative_tolerance);
  report.eigenvalues = eigenvalues(m, options);
  report.zero_multiplicity_algebraic = count_small(report.eigenvalues, report.tolerance);
  KernelResult k = kernel_and_rank(m, report.tolerance);
  report.zero_multiplicity_geometric = m.cols() - k.rank;
  report.kernel_basis = std::move(k.basis);
  return report;
}

double determinant(const Matrix& m) {
  if (!m.square()) throw ValidationError("determinant of a non-square matrix");
  Matrix a = m;
  const std::size_t n = a.rows();
  double det = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(a(i, k)) > std::abs(a(piv, k))) piv = i;
    if (a(piv, k) == 0.0) return 0.0;
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(piv, j));
      det = -det;
    }
    det *= a(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      const double f = a(i, k) / a(k, k);
      for (std::size_t j = k; j < n; ++j) a(i, j) -= f * a(k, j);
    }
  }
  return det;
}

double multiset_distance(std::span<const Complex> a, std::span<const Complex> b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  std::vector<bool> used(b.size(), false);
  double worst = 0.0;
  for (const Complex& x : a) {
    std::size_t best = b.size();
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (used[j]) continue;
      const double d = std::abs(x - b[j]);
      if (d < best_d) {
        best_d = d;
        best = j;
      }
    }
    used[best] = true;
    worst = std::max(worst, best_d);
  }
  return worst;
}

std::vector<std::vector<double>> orthonormalize(const std::vector<std::vector<double>>& vectors, double tol) {
  std::vector<std::vector<double>> basis;
  for (std::vector<double> v : vectors) {
    const double original = std::sqrt(std::inner_product(v.begin(), v.end(), v.begin(), 0.0));
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& q : basis) {
        const double dot = std::inner_product(v.begin(), v.end(), q.begin(), 0.0);
        for (std::size_t i = 0; i < v.size(); ++i) v[i] -= dot * q[i];
      }
    }
    const double nv = std::sqrt(std::inner_product(v.begin(), v.end(), v.begin(), 0.0));
    if (nv <= tol * std::max(1.0, original)) continue;
    for (double& x : v) x /= nv;
    basis.push_back(std::move(v));
  }
  return basis;
}

double subspace_distance(const std::vector<std::vector<double>>& a, const std::vector<std::vector<double>>& b) {
  std::size_t n = 0;
  if (!a.empty()) n = a.front().size();
  else if (!b.empty()) n = b.front().size();
  Matrix p(n, n);
  for (const auto& v : a)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) p(i, j) += v[i] * v[j];
  for (const auto& v : b)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) p(i, j) -= v[i] * v[j];
  return p.frobenius_norm();
}

}  // namespace dirlap
