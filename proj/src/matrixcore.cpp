#include "pwl/matrixcore.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>

#include "pwl/error.hpp"

namespace pwl {

namespace {
constexpr int kMaxEigenDim = 12;

double sign_of(double a, double b) { return b >= 0 ? std::fabs(a) : -std::fabs(a); }
}  // namespace

Mat::Mat(int n) : n_(n) {
  if (n < 1) throw_domain(ErrorCode::BadInput, "matrix dimension must be positive");
  if (n > 3) big_.assign(static_cast<size_t>(n) * n, 0.0);
}

Mat::Mat(int n, std::initializer_list<double> rowmajor) : Mat(n) {
  if (static_cast<int>(rowmajor.size()) != n * n)
    throw_domain(ErrorCode::BadInput, "matrix initializer size mismatch");
  std::copy(rowmajor.begin(), rowmajor.end(), data());
}

Mat Mat::identity(int n) {
  Mat m(n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1.0;
  return m;
}

bool Mat::all_finite() const {
  const double* p = data();
  for (int i = 0; i < n_ * n_; ++i)
    if (!std::isfinite(p[i])) return false;
  return true;
}

double Mat::norm_inf() const {
  double best = 0.0;
  for (int i = 0; i < n_; ++i) {
    double s = 0.0;
    for (int j = 0; j < n_; ++j) s += std::fabs(at(i, j));
    best = std::max(best, s);
  }
  return best;
}

bool operator==(const Mat& a, const Mat& b) {
  if (a.n() != b.n()) return false;
  return std::memcmp(a.data(), b.data(), sizeof(double) * a.n() * a.n()) == 0;
}

void mul_into(const Mat& a, const Mat& b, Mat& out) {
  const int n = a.n();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double s = 0.0;
      for (int k = 0; k < n; ++k) s += a.at(i, k) * b.at(k, j);
      out.at(i, j) = s;
    }
}

Mat operator*(const Mat& a, const Mat& b) {
  Mat out(a.n());
  mul_into(a, b, out);
  return out;
}

Mat operator+(const Mat& a, const Mat& b) {
  Mat out(a.n());
  for (int i = 0; i < a.n() * a.n(); ++i) out.data()[i] = a.data()[i] + b.data()[i];
  return out;
}

Mat operator-(const Mat& a, const Mat& b) {
  Mat out(a.n());
  for (int i = 0; i < a.n() * a.n(); ++i) out.data()[i] = a.data()[i] - b.data()[i];
  return out;
}

void matvec(const Mat& a, const double* x, double* y) {
  const int n = a.n();
  for (int i = 0; i < n; ++i) {
    double s = 0.0;
    for (int j = 0; j < n; ++j) s += a.at(i, j) * x[j];
    y[i] = s;
  }
}

Vec matvec(const Mat& a, const Vec& x) {
  Vec y(a.n());
  matvec(a, x.data(), y.data());
  return y;
}

Mat identity_minus(const Mat& a) {
  Mat out(a.n());
  for (int i = 0; i < a.n(); ++i)
    for (int j = 0; j < a.n(); ++j) out.at(i, j) = (i == j ? 1.0 : 0.0) - a.at(i, j);
  return out;
}

namespace {

// Extended-precision accumulation: products of long words can push matrix
// norms to 1e9 and beyond, where double-only determinants and solves lose the
// digits that the adjugate identity checks at 1e-9.
using xdouble = long double;

// LU with partial pivoting on a scratch copy; returns determinant, or fills
// pivots for solving.  lu is row-major n*n, perm has n entries.
xdouble lu_decompose(std::vector<xdouble>& lu, std::vector<int>& perm, int n,
                     bool* singular) {
  xdouble det = 1.0L;
  for (int i = 0; i < n; ++i) perm[i] = i;
  if (singular) *singular = false;
  for (int col = 0; col < n; ++col) {
    int piv = col;
    xdouble best = std::fabs(static_cast<double>(lu[col * n + col]));
    for (int r = col + 1; r < n; ++r) {
      xdouble v = lu[r * n + col] < 0 ? -lu[r * n + col] : lu[r * n + col];
      if (v > best) {
        best = v;
        piv = r;
      }
    }
    if (best == 0.0L) {
      if (singular) *singular = true;
      return 0.0L;
    }
    if (piv != col) {
      for (int j = 0; j < n; ++j) std::swap(lu[piv * n + j], lu[col * n + j]);
      std::swap(perm[piv], perm[col]);
      det = -det;
    }
    det *= lu[col * n + col];
    const xdouble inv_p = 1.0L / lu[col * n + col];
    for (int r = col + 1; r < n; ++r) {
      xdouble f = lu[r * n + col] * inv_p;
      lu[r * n + col] = f;
      for (int j = col + 1; j < n; ++j) lu[r * n + j] -= f * lu[col * n + j];
    }
  }
  return det;
}

std::vector<xdouble> to_xdouble(const Mat& a) {
  const int n = a.n();
  std::vector<xdouble> out(static_cast<size_t>(n) * n);
  for (int i = 0; i < n * n; ++i) out[static_cast<size_t>(i)] = a.data()[i];
  return out;
}

double det2(const Mat& a) {
  const xdouble r = static_cast<xdouble>(a.at(0, 0)) * a.at(1, 1) -
                    static_cast<xdouble>(a.at(0, 1)) * a.at(1, 0);
  return static_cast<double>(r);
}

double det3(const Mat& a) {
  const xdouble r =
      static_cast<xdouble>(a.at(0, 0)) * (static_cast<xdouble>(a.at(1, 1)) * a.at(2, 2) -
                                          static_cast<xdouble>(a.at(1, 2)) * a.at(2, 1)) -
      static_cast<xdouble>(a.at(0, 1)) * (static_cast<xdouble>(a.at(1, 0)) * a.at(2, 2) -
                                          static_cast<xdouble>(a.at(1, 2)) * a.at(2, 0)) +
      static_cast<xdouble>(a.at(0, 2)) * (static_cast<xdouble>(a.at(1, 0)) * a.at(2, 1) -
                                          static_cast<xdouble>(a.at(1, 1)) * a.at(2, 0));
  return static_cast<double>(r);
}

// Determinant of the minor of a with row i and column j removed.
double minor_det(const Mat& a, int i, int j) {
  const int n = a.n();
  Mat m(n - 1 >= 1 ? n - 1 : 1);
  if (n == 1) return 1.0;  // empty minor
  int r = 0;
  for (int ii = 0; ii < n; ++ii) {
    if (ii == i) continue;
    int c = 0;
    for (int jj = 0; jj < n; ++jj) {
      if (jj == j) continue;
      m.at(r, c) = a.at(ii, jj);
      ++c;
    }
    ++r;
  }
  return determinant(m);
}

Mat adjugate_cofactors(const Mat& a) {
  const int n = a.n();
  Mat adj(n);
  if (n == 1) {
    adj.at(0, 0) = 1.0;
    return adj;
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double c = minor_det(a, j, i);  // transposed cofactor
      adj.at(i, j) = (((i + j) & 1) ? -c : c);
    }
  return adj;
}

}  // namespace

double determinant(const Mat& a) {
  switch (a.n()) {
    case 1:
      return a.at(0, 0);
    case 2:
      return det2(a);
    case 3:
      return det3(a);
    default: {
      const int n = a.n();
      std::vector<xdouble> lu = to_xdouble(a);
      std::vector<int> perm(n);
      return static_cast<double>(lu_decompose(lu, perm, n, nullptr));
    }
  }
}

Mat adjugate(const Mat& a) {
  const int n = a.n();
  if (n <= 4) return adjugate_cofactors(a);
  double det = determinant(a);
  double scale = std::pow(std::max(1.0, a.norm_inf()), n);
  if (std::fabs(det) <= 1e-8 * scale) return adjugate_cofactors(a);
  Mat inv = inverse(a);
  Mat adj(n);
  for (int i = 0; i < n * n; ++i) adj.data()[i] = det * inv.data()[i];
  return adj;
}

Vec solve(const Mat& a, const Vec& b) {
  const int n = a.n();
  if (static_cast<int>(b.size()) != n)
    throw_domain(ErrorCode::BadInput, "solve: dimension mismatch");
  std::vector<xdouble> lu = to_xdouble(a);
  std::vector<int> perm(n);
  bool singular = false;
  lu_decompose(lu, perm, n, &singular);
  if (singular) throw_numerical(ErrorCode::NonConvergence, "solve: singular matrix");
  std::vector<xdouble> x(n);
  for (int i = 0; i < n; ++i) x[i] = b[static_cast<size_t>(perm[i])];
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < i; ++j) x[i] -= lu[i * n + j] * x[j];
  for (int i = n - 1; i >= 0; --i) {
    for (int j = i + 1; j < n; ++j) x[i] -= lu[i * n + j] * x[j];
    x[i] /= lu[i * n + i];
  }
  Vec out(n);
  for (int i = 0; i < n; ++i) out[static_cast<size_t>(i)] = static_cast<double>(x[i]);
  return out;
}

Mat inverse(const Mat& a) {
  const int n = a.n();
  Mat inv(n);
  std::vector<xdouble> lu = to_xdouble(a);
  std::vector<int> perm(n);
  bool singular = false;
  lu_decompose(lu, perm, n, &singular);
  if (singular) throw_numerical(ErrorCode::NonConvergence, "inverse: singular matrix");
  std::vector<xdouble> x(n);
  for (int col = 0; col < n; ++col) {
    for (int i = 0; i < n; ++i) x[i] = (perm[i] == col) ? 1.0L : 0.0L;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < i; ++j) x[i] -= lu[i * n + j] * x[j];
    for (int i = n - 1; i >= 0; --i) {
      for (int j = i + 1; j < n; ++j) x[i] -= lu[i * n + j] * x[j];
      x[i] /= lu[i * n + i];
    }
    for (int i = 0; i < n; ++i) inv.at(i, col) = static_cast<double>(x[i]);
  }
  return inv;
}

void eigen_moduli_2x2(double a11, double a12, double a21, double a22, double out[2]) {
  const double tr = a11 + a22;
  const double det = a11 * a22 - a12 * a21;
  const double disc = tr * tr - 4.0 * det;
  if (disc >= 0.0) {
    const double rt = std::sqrt(disc);
    double l1 = 0.5 * (tr + rt);
    double l2 = 0.5 * (tr - rt);
    // evaluate the smaller root via det/l1 when possible to avoid cancellation
    if (l1 != 0.0) l2 = det / l1;
    out[0] = std::fabs(l1);
    out[1] = std::fabs(l2);
  } else {
    const double mod = std::sqrt(det);  // det > 0 when complex
    out[0] = mod;
    out[1] = mod;
  }
  if (out[1] > out[0]) std::swap(out[0], out[1]);
}

namespace {

// Householder reduction to upper Hessenberg form, in place.
void hessenberg(std::vector<double>& h, int n) {
  std::vector<double> v(n);
  for (int k = 0; k + 2 < n; ++k) {
    double xnorm = 0.0;
    for (int i = k + 1; i < n; ++i) xnorm += h[i * n + k] * h[i * n + k];
    xnorm = std::sqrt(xnorm);
    if (xnorm == 0.0) continue;
    double alpha = h[(k + 1) * n + k] >= 0 ? -xnorm : xnorm;
    double vnorm2 = 0.0;
    for (int i = k + 1; i < n; ++i) {
      v[i] = h[i * n + k];
      if (i == k + 1) v[i] -= alpha;
      vnorm2 += v[i] * v[i];
    }
    if (vnorm2 == 0.0) continue;
    const double beta = 2.0 / vnorm2;
    // left: H -= beta v (v^T H) on rows k+1..n-1
    for (int j = k; j < n; ++j) {
      double s = 0.0;
      for (int i = k + 1; i < n; ++i) s += v[i] * h[i * n + j];
      s *= beta;
      for (int i = k + 1; i < n; ++i) h[i * n + j] -= s * v[i];
    }
    // right: H -= beta (H v) v^T on cols k+1..n-1
    for (int i = 0; i < n; ++i) {
      double s = 0.0;
      for (int j = k + 1; j < n; ++j) s += h[i * n + j] * v[j];
      s *= beta;
      for (int j = k + 1; j < n; ++j) h[i * n + j] -= s * v[j];
    }
    h[(k + 1) * n + k] = alpha;
    for (int i = k + 2; i < n; ++i) h[i * n + k] = 0.0;
  }
}

// Double-shift QR on an upper Hessenberg matrix (classic hqr scheme).
// Appends |lambda| values to out.
void hqr_moduli(std::vector<double>& h, int n, std::vector<double>& out) {
  const double eps = 1e-14;
  double anorm = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = std::max(i - 1, 0); j < n; ++j) anorm += std::fabs(h[i * n + j]);
  if (anorm == 0.0) {
    out.assign(n, 0.0);
    return;
  }
  int nn = n - 1;
  double t = 0.0;
  while (nn >= 0) {
    int its = 0;
    int l;
    for (;;) {
      for (l = nn; l >= 1; --l) {
        double s = std::fabs(h[(l - 1) * n + (l - 1)]) + std::fabs(h[l * n + l]);
        if (s == 0.0) s = anorm;
        if (std::fabs(h[l * n + (l - 1)]) <= eps * s) {
          h[l * n + (l - 1)] = 0.0;
          break;
        }
      }
      double x = h[nn * n + nn];
      if (l == nn) {
        out.push_back(std::fabs(x + t));
        --nn;
        break;
      }
      double y = h[(nn - 1) * n + (nn - 1)];
      double w = h[nn * n + (nn - 1)] * h[(nn - 1) * n + nn];
      if (l == nn - 1) {
        double p = 0.5 * (y - x);
        double q = p * p + w;
        double z = std::sqrt(std::fabs(q));
        x += t;
        if (q >= 0.0) {
          z = p + sign_of(z, p);
          double r1 = x + z;
          double r2 = (z != 0.0) ? x - w / z : x + z;
          out.push_back(std::fabs(r1));
          out.push_back(std::fabs(r2));
        } else {
          double mod = std::sqrt((x + p) * (x + p) + z * z);
          out.push_back(mod);
          out.push_back(mod);
        }
        nn -= 2;
        break;
      }
      if (its == 30)
        throw_numerical(ErrorCode::NonConvergence,
                        "eigen_moduli: QR iteration failed to converge");
      if (its == 10 || its == 20) {
        // exceptional shift
        t += x;
        for (int i = 0; i <= nn; ++i) h[i * n + i] -= x;
        double s = std::fabs(h[nn * n + (nn - 1)]) + std::fabs(h[(nn - 1) * n + (nn - 2)]);
        y = x = 0.75 * s;
        w = -0.4375 * s * s;
      }
      ++its;
      int m;
      double p = 0.0, q = 0.0, r = 0.0;
      for (m = nn - 2; m >= l; --m) {
        double z = h[m * n + m];
        double rr = x - z;
        double ss = y - z;
        p = (rr * ss - w) / h[(m + 1) * n + m] + h[m * n + (m + 1)];
        q = h[(m + 1) * n + (m + 1)] - z - rr - ss;
        r = h[(m + 2) * n + (m + 1)];
        double s = std::fabs(p) + std::fabs(q) + std::fabs(r);
        p /= s;
        q /= s;
        r /= s;
        if (m == l) break;
        double u = std::fabs(h[m * n + (m - 1)]) * (std::fabs(q) + std::fabs(r));
        double v = std::fabs(p) * (std::fabs(h[(m - 1) * n + (m - 1)]) + std::fabs(z) +
                                   std::fabs(h[(m + 1) * n + (m + 1)]));
        if (u <= eps * v) break;
      }
      for (int i = m + 2; i <= nn; ++i) {
        h[i * n + (i - 2)] = 0.0;
        if (i != m + 2) h[i * n + (i - 3)] = 0.0;
      }
      for (int k = m; k <= nn - 1; ++k) {
        double xk = 0.0;
        if (k != m) {
          p = h[k * n + (k - 1)];
          q = h[(k + 1) * n + (k - 1)];
          r = (k != nn - 1) ? h[(k + 2) * n + (k - 1)] : 0.0;
          xk = std::fabs(p) + std::fabs(q) + std::fabs(r);
          if (xk != 0.0) {
            p /= xk;
            q /= xk;
            r /= xk;
          }
        }
        double s = sign_of(std::sqrt(p * p + q * q + r * r), p);
        if (s == 0.0) continue;
        if (k == m) {
          if (l != m) h[k * n + (k - 1)] = -h[k * n + (k - 1)];
        } else {
          h[k * n + (k - 1)] = -s * xk;
        }
        p += s;
        const double hx = p / s;
        const double hy = q / s;
        const double hz = r / s;
        q /= p;
        r /= p;
        for (int j = k; j <= nn; ++j) {
          double pp = h[k * n + j] + q * h[(k + 1) * n + j];
          if (k != nn - 1) {
            pp += r * h[(k + 2) * n + j];
            h[(k + 2) * n + j] -= pp * hz;
          }
          h[(k + 1) * n + j] -= pp * hy;
          h[k * n + j] -= pp * hx;
        }
        int mmin = std::min(nn, k + 3);
        for (int i = l; i <= mmin; ++i) {
          double pp = hx * h[i * n + k] + hy * h[i * n + (k + 1)];
          if (k != nn - 1) {
            pp += hz * h[i * n + (k + 2)];
            h[i * n + (k + 2)] -= pp * r;
          }
          h[i * n + (k + 1)] -= pp * q;
          h[i * n + k] -= pp;
        }
      }
    }
  }
}

}  // namespace

std::vector<double> eigen_moduli(const Mat& a) {
  const int n = a.n();
  if (!a.all_finite())
    throw_numerical(ErrorCode::NonFiniteState, "eigen_moduli: non-finite entries");
  std::vector<double> out;
  if (n == 1) {
    out.push_back(std::fabs(a.at(0, 0)));
  } else if (n == 2) {
    double m[2];
    eigen_moduli_2x2(a.at(0, 0), a.at(0, 1), a.at(1, 0), a.at(1, 1), m);
    out.assign(m, m + 2);
  } else if (n <= kMaxEigenDim) {
    std::vector<double> h(a.data(), a.data() + n * n);
    hessenberg(h, n);
    hqr_moduli(h, n, out);
  } else {
    throw_domain(ErrorCode::BadInput, "eigen_moduli: dimension above supported range (12)");
  }
  std::sort(out.begin(), out.end(), std::greater<double>());
  return out;
}

double norm_inf(const Vec& v) {
  double best = 0.0;
  for (double x : v) best = std::max(best, std::fabs(x));
  return best;
}

}  // namespace pwl
