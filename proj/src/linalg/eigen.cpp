#include "detineq/eigen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "detineq/errors.hpp"

namespace detineq {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

double offdiagonal_norm(const ComplexMatrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (i != j) s += std::norm(a(i, j));
  return std::sqrt(s);
}

// Parameters of the 2x2 Hermitian Jacobi rotation that annihilates the
// off-diagonal entry `off` of [[app, off], [conj(off), aqq]].
struct Rotation {
  double c;
  double s;
  double t;
  Complex phase;  // off / |off|
};

Rotation jacobi_rotation(double app, double aqq, Complex off) {
  const double mag = std::abs(off);
  const double theta = (aqq - app) / (2.0 * mag);
  double t;
  if (std::abs(theta) > 1e150) {
    t = 0.5 / theta;
  } else {
    t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
    if (theta < 0.0) t = -t;
  }
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  return {c, t * c, t, off / mag};
}

// Columns p, q of m times the unitary G with G_pp = c, G_pq = s,
// G_qp = -s conj(e), G_qq = c conj(e).
void rotate_columns(ComplexMatrix& m, std::size_t p, std::size_t q, const Rotation& g) {
  const Complex ebar = std::conj(g.phase);
  for (std::size_t k = 0; k < m.rows(); ++k) {
    const Complex mp = m(k, p);
    const Complex mq = m(k, q);
    m(k, p) = g.c * mp - g.s * ebar * mq;
    m(k, q) = g.s * mp + g.c * ebar * mq;
  }
}

// Rows p, q of G^* times m.
void rotate_rows(ComplexMatrix& m, std::size_t p, std::size_t q, const Rotation& g) {
  for (std::size_t k = 0; k < m.cols(); ++k) {
    const Complex mp = m(p, k);
    const Complex mq = m(q, k);
    m(p, k) = g.c * mp - g.s * g.phase * mq;
    m(q, k) = g.s * mp + g.c * g.phase * mq;
  }
}

// Tolerant ordering for complex eigenvalues: modulus, then real, then
// imaginary part, all descending. Differences within a relative 1e-12 count
// as ties so that round-off does not decide the order of conjugate pairs.
bool precedes(Complex a, Complex b) {
  const double scale = std::max({std::abs(a), std::abs(b), std::numeric_limits<double>::min()});
  const double band = 1e-12 * scale;
  const double dm = std::abs(a) - std::abs(b);
  if (dm > band) return true;
  if (dm < -band) return false;
  const double dr = a.real() - b.real();
  if (dr > band) return true;
  if (dr < -band) return false;
  return a.imag() > b.imag() + band;
}

void sort_spectrum(std::vector<Complex>& v) {
  // Insertion sort: the tolerant comparator is not a strict weak order in
  // general, and n is small.
  for (std::size_t i = 1; i < v.size(); ++i) {
    const Complex key = v[i];
    std::size_t j = i;
    while (j > 0 && precedes(key, v[j - 1])) {
      v[j] = v[j - 1];
      --j;
    }
    v[j] = key;
  }
}

void hessenberg_reduce(ComplexMatrix& h) {
  const std::size_t n = h.rows();
  if (n < 3) return;
  std::vector<Complex> v(n);
  for (std::size_t k = 0; k + 2 < n; ++k) {
    double tail = 0.0;
    for (std::size_t i = k + 2; i < n; ++i) tail += std::norm(h(i, k));
    if (tail == 0.0) continue;
    const std::size_t len = n - k - 1;
    const Complex x0 = h(k + 1, k);
    const double xnorm = std::sqrt(tail + std::norm(x0));
    const Complex ph = (x0 == 0.0) ? Complex(1.0) : x0 / std::abs(x0);
    for (std::size_t i = 0; i < len; ++i) v[i] = h(k + 1 + i, k);
    v[0] += ph * xnorm;
    double vn = 0.0;
    for (std::size_t i = 0; i < len; ++i) vn += std::norm(v[i]);
    const double beta = 2.0 / vn;

    for (std::size_t j = k; j < n; ++j) {
      Complex s = 0.0;
      for (std::size_t i = 0; i < len; ++i) s += std::conj(v[i]) * h(k + 1 + i, j);
      s *= beta;
      for (std::size_t i = 0; i < len; ++i) h(k + 1 + i, j) -= v[i] * s;
    }
    for (std::size_t i = 0; i < n; ++i) {
      Complex s = 0.0;
      for (std::size_t j = 0; j < len; ++j) s += h(i, k + 1 + j) * v[j];
      s *= beta;
      for (std::size_t j = 0; j < len; ++j) h(i, k + 1 + j) -= s * std::conj(v[j]);
    }
    h(k + 1, k) = -ph * xnorm;
    for (std::size_t i = k + 2; i < n; ++i) h(i, k) = 0.0;
  }
}

// Both roots of z^2 - tr z + dt, the larger-magnitude one first computed
// without cancellation.
std::pair<Complex, Complex> quadratic_roots(Complex tr, Complex dt) {
  const Complex half = 0.5 * tr;
  const Complex disc = std::sqrt(half * half - dt);
  const Complex r1 = (std::real(std::conj(half) * disc) >= 0.0) ? half + disc : half - disc;
  const Complex r2 = (r1 == 0.0) ? Complex(0.0) : dt / r1;
  return {r1, r2};
}

struct Givens {
  double c;
  Complex s;
};

// [c s; -conj(s) c] [a; b] = [r; 0].
Givens make_givens(Complex a, Complex b) {
  const double ma = std::abs(a);
  const double r = std::hypot(ma, std::abs(b));
  if (r == 0.0) return {1.0, 0.0};
  if (ma == 0.0) return {0.0, std::conj(b) / std::abs(b)};
  return {ma / r, (a / ma) * std::conj(b) / r};
}

}  // namespace

HermitianEigensystem hermitian_eigensystem(const ComplexMatrix& a, const Tolerances& tol) {
  if (!a.is_square()) throw DimensionError("hermitian_eigensystem", a.rows(), a.cols());
  const std::size_t n = a.rows();
  const double norm = frobenius_norm(a);
  const ComplexMatrix ah = a.adjoint();
  const double asym = frobenius_norm(a - ah);
  if (asym > tol.hermitian * norm) throw NotHermitianError(asym, tol.hermitian * norm);

  ComplexMatrix m = 0.5 * (a + ah);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = m(i, i).real();
  ComplexMatrix v = ComplexMatrix::identity(n);

  const double target = tol.jacobi_offdiag * norm;
  int sweep = 0;
  double off = offdiagonal_norm(m);
  while (off > target) {
    if (sweep == tol.jacobi_max_sweeps) throw ConvergenceError("cyclic Jacobi", sweep, off);
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex apq = m(p, q);
        if (apq == 0.0) continue;
        const double app = m(p, p).real();
        const double aqq = m(q, q).real();
        const Rotation g = jacobi_rotation(app, aqq, apq);
        rotate_columns(m, p, q, g);
        rotate_rows(m, p, q, g);
        rotate_columns(v, p, q, g);
        const double mag = std::abs(apq);
        m(p, q) = 0.0;
        m(q, p) = 0.0;
        m(p, p) = app - g.t * mag;
        m(q, q) = aqq + g.t * mag;
      }
    ++sweep;
    off = offdiagonal_norm(m);
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return m(i, i).real() > m(j, j).real();
  });
  HermitianEigensystem out{std::vector<double>(n), ComplexMatrix(n, n)};
  for (std::size_t k = 0; k < n; ++k) {
    out.eigenvalues[k] = m(order[k], order[k]).real();
    for (std::size_t i = 0; i < n; ++i) out.eigenvectors(i, k) = v(i, order[k]);
  }
  return out;
}

SingularValueDecomposition svd(const ComplexMatrix& a, const Tolerances& tol) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  if (m < n) throw DimensionError("svd (requires rows >= cols)", m, n);

  ComplexMatrix u = a;
  ComplexMatrix v = ComplexMatrix::identity(n);
  const double conv = kEps * static_cast<double>(m);

  bool rotated = true;
  int sweep = 0;
  double worst = 0.0;
  while (rotated) {
    if (sweep == tol.jacobi_max_sweeps) throw ConvergenceError("one-sided Jacobi", sweep, worst);
    rotated = false;
    worst = 0.0;
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        double alpha = 0.0, beta = 0.0;
        Complex gamma = 0.0;
        for (std::size_t k = 0; k < m; ++k) {
          alpha += std::norm(u(k, p));
          beta += std::norm(u(k, q));
          gamma += std::conj(u(k, p)) * u(k, q);
        }
        const double mag = std::abs(gamma);
        if (mag == 0.0) continue;
        const double rel = mag / std::sqrt(alpha * beta);
        if (rel <= conv) continue;
        worst = std::max(worst, rel);
        rotated = true;
        const Rotation g = jacobi_rotation(alpha, beta, gamma);
        rotate_columns(u, p, q, g);
        rotate_columns(v, p, q, g);
      }
    ++sweep;
  }

  std::vector<double> sigma(n);
  for (std::size_t j = 0; j < n; ++j) {
    double s = 0.0;
    for (std::size_t k = 0; k < m; ++k) s += std::norm(u(k, j));
    sigma[j] = std::sqrt(s);
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return sigma[i] > sigma[j]; });

  SingularValueDecomposition out{ComplexMatrix(m, n), std::vector<double>(n), ComplexMatrix(n, n)};
  const double tiny = std::numeric_limits<double>::min() / kEps;
  std::vector<bool> filled(n, false);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t j = order[k];
    out.sigma[k] = sigma[j];
    for (std::size_t i = 0; i < n; ++i) out.right(i, k) = v(i, j);
    if (sigma[j] > tiny) {
      for (std::size_t i = 0; i < m; ++i) out.left(i, k) = u(i, j) / sigma[j];
      filled[k] = true;
    }
  }

  // Complete the left factor on the numerical null space with Gram-Schmidt
  // against the standard basis.
  std::size_t next_basis = 0;
  for (std::size_t k = 0; k < n; ++k) {
    if (filled[k]) continue;
    while (true) {
      if (next_basis == m) throw ConvergenceError("svd basis completion", 0, 0.0);
      std::vector<Complex> w(m, 0.0);
      w[next_basis++] = 1.0;
      for (int pass = 0; pass < 2; ++pass)
        for (std::size_t c = 0; c < n; ++c) {
          if (!filled[c]) continue;
          Complex d = 0.0;
          for (std::size_t i = 0; i < m; ++i) d += std::conj(out.left(i, c)) * w[i];
          for (std::size_t i = 0; i < m; ++i) w[i] -= d * out.left(i, c);
        }
      double wn = 0.0;
      for (const auto& x : w) wn += std::norm(x);
      wn = std::sqrt(wn);
      if (wn < 0.5) continue;
      for (std::size_t i = 0; i < m; ++i) out.left(i, k) = w[i] / wn;
      filled[k] = true;
      break;
    }
  }
  return out;
}

SingularSpectrum singular_values(const ComplexMatrix& a, const Tolerances& tol) {
  if (a.rows() >= a.cols()) return {svd(a, tol).sigma};
  return {svd(a.adjoint(), tol).sigma};
}

Spectrum general_eigenvalues(const ComplexMatrix& a, const Tolerances& tol) {
  if (!a.is_square()) throw DimensionError("general_eigenvalues", a.rows(), a.cols());
  const std::size_t n = a.rows();
  ComplexMatrix h = a;
  hessenberg_reduce(h);
  const double hnorm = frobenius_norm(h);

  std::vector<Complex> eig;
  eig.reserve(n);
  std::ptrdiff_t hi = static_cast<std::ptrdiff_t>(n) - 1;
  int iter = 0;
  const int limit = tol.qr_iterations_per_eigenvalue;
  std::vector<Givens> rot(n);

  while (hi >= 0) {
    if (hi == 0) {
      eig.push_back(h(0, 0));
      break;
    }
    std::ptrdiff_t l = hi;
    for (; l > 0; --l) {
      double s = std::abs(h(l - 1, l - 1)) + std::abs(h(l, l));
      if (s == 0.0) s = hnorm;
      if (std::abs(h(l, l - 1)) <= kEps * s) {
        h(l, l - 1) = 0.0;
        break;
      }
    }
    if (l == hi) {
      eig.push_back(h(hi, hi));
      --hi;
      iter = 0;
      continue;
    }
    if (l == hi - 1) {
      const Complex tr = h(hi - 1, hi - 1) + h(hi, hi);
      const Complex dt = h(hi - 1, hi - 1) * h(hi, hi) - h(hi - 1, hi) * h(hi, hi - 1);
      const auto [r1, r2] = quadratic_roots(tr, dt);
      eig.push_back(r1);
      eig.push_back(r2);
      hi -= 2;
      iter = 0;
      continue;
    }
    if (++iter > limit) throw ConvergenceError("shifted QR", iter, std::abs(h(hi, hi - 1)));

    Complex mu;
    if (iter % 10 == 0) {
      mu = h(hi, hi) + std::abs(h(hi, hi - 1).real()) + std::abs(h(hi - 1, hi - 2));
    } else {
      const Complex tr = h(hi - 1, hi - 1) + h(hi, hi);
      const Complex dt = h(hi - 1, hi - 1) * h(hi, hi) - h(hi - 1, hi) * h(hi, hi - 1);
      const auto [r1, r2] = quadratic_roots(tr, dt);
      mu = (std::abs(r1 - h(hi, hi)) < std::abs(r2 - h(hi, hi))) ? r1 : r2;
    }

    const auto lo = static_cast<std::size_t>(l);
    const auto top = static_cast<std::size_t>(hi);
    for (std::size_t k = lo; k <= top; ++k) h(k, k) -= mu;
    for (std::size_t k = lo; k < top; ++k) {
      const Givens g = make_givens(h(k, k), h(k + 1, k));
      rot[k] = g;
      for (std::size_t j = k; j <= top; ++j) {
        const Complex x = h(k, j);
        const Complex y = h(k + 1, j);
        h(k, j) = g.c * x + g.s * y;
        h(k + 1, j) = -std::conj(g.s) * x + g.c * y;
      }
    }
    for (std::size_t k = lo; k < top; ++k) {
      const Givens& g = rot[k];
      const std::size_t last = std::min(k + 2, top);
      for (std::size_t i = lo; i <= last; ++i) {
        const Complex x = h(i, k);
        const Complex y = h(i, k + 1);
        h(i, k) = g.c * x + std::conj(g.s) * y;
        h(i, k + 1) = -g.s * x + g.c * y;
      }
    }
    for (std::size_t k = lo; k <= top; ++k) h(k, k) += mu;
  }

  sort_spectrum(eig);
  return {eig};
}

}  // namespace detineq
