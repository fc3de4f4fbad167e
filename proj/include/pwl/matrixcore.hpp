#ifndef PWL_MATRIXCORE_HPP
#define PWL_MATRIXCORE_HPP

#include <array>
#include <initializer_list>
#include <vector>

namespace pwl {

using Vec = std::vector<double>;

// Small dense square matrix, row-major.  Inline storage up to 3x3 keeps the
// parameter-sweep inner loops allocation-free; larger sizes (n <= 12) spill
// to the heap.
class Mat {
 public:
  Mat() = default;
  explicit Mat(int n);
  Mat(int n, std::initializer_list<double> rowmajor);
  static Mat identity(int n);

  int n() const { return n_; }
  double& at(int i, int j) { return data()[i * n_ + j]; }
  double at(int i, int j) const { return data()[i * n_ + j]; }
  double* data() { return n_ <= 3 ? small_.data() : big_.data(); }
  const double* data() const { return n_ <= 3 ? small_.data() : big_.data(); }

  bool all_finite() const;
  double norm_inf() const;  // max row sum

 private:
  int n_ = 0;
  std::array<double, 9> small_{};
  std::vector<double> big_;
};

bool operator==(const Mat& a, const Mat& b);

// out = a*b; out must be presized to the same dimension and distinct from a, b.
void mul_into(const Mat& a, const Mat& b, Mat& out);
Mat operator*(const Mat& a, const Mat& b);
Mat operator+(const Mat& a, const Mat& b);
Mat operator-(const Mat& a, const Mat& b);

// y = A x (+ b when given); y may not alias x.
void matvec(const Mat& a, const double* x, double* y);
Vec matvec(const Mat& a, const Vec& x);

Mat identity_minus(const Mat& a);  // I - A

double determinant(const Mat& a);
Mat adjugate(const Mat& a);

// Solves A x = b by LU with partial pivoting; throws a numerical error on a
// vanishing pivot.
Vec solve(const Mat& a, const Vec& b);
Mat inverse(const Mat& a);

// Moduli of all eigenvalues, sorted descending.  n = 2 uses the quadratic
// formula on the characteristic polynomial; 3 <= n <= 12 uses Householder
// Hessenberg reduction followed by double-shift QR.
std::vector<double> eigen_moduli(const Mat& a);
void eigen_moduli_2x2(double a11, double a12, double a21, double a22, double out[2]);

double norm_inf(const Vec& v);

}  // namespace pwl

#endif
