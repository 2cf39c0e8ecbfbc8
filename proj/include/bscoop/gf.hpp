#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace bscoop {

class SingularMatrixError : public std::runtime_error {
 public:
  explicit SingularMatrixError(const std::string& what) : std::runtime_error(what) {}
};

// GF(p^q) with p prime and p^q <= 2^16. Elements are canonical integers whose
// base-p digits are the polynomial coefficients. Multiplication and inversion
// run on log/antilog tables built once at construction.
class Field {
 public:
  // reduction_poly encodes the monic degree-q reduction polynomial in base-p
  // digits (ignored for q == 1).
  Field(int p, int q, uint32_t reduction_poly = 0);

  static Field gf256();            // GF(2^8), x^8+x^4+x^3+x^2+1
  static Field gf16();             // GF(2^4), x^4+x+1
  static Field prime_field(int p); // GF(p)

  int p() const { return p_; }
  int q() const { return q_; }
  uint32_t order() const { return order_; }
  uint32_t reduction_poly() const { return poly_; }

  uint16_t add(uint16_t a, uint16_t b) const;
  uint16_t sub(uint16_t a, uint16_t b) const;
  uint16_t neg(uint16_t a) const;
  uint16_t mul(uint16_t a, uint16_t b) const;
  uint16_t inv(uint16_t a) const;
  uint16_t pow(uint16_t a, long long e) const;

 private:
  uint32_t slow_mul(uint32_t a, uint32_t b) const;

  int p_ = 0;
  int q_ = 0;
  uint32_t order_ = 0;
  uint32_t poly_ = 0;
  std::vector<uint16_t> log_;
  std::vector<uint16_t> exp_;
};

struct Matrix {
  int rows = 0;
  int cols = 0;
  std::vector<uint16_t> a;

  Matrix() = default;
  Matrix(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, 0) {
    if (r <= 0 || c <= 0) throw std::invalid_argument("matrix dimensions must be positive");
  }

  uint16_t& at(int r, int c) { return a[static_cast<size_t>(r) * cols + c]; }
  uint16_t at(int r, int c) const { return a[static_cast<size_t>(r) * cols + c]; }

  static Matrix identity(int n);
  Matrix columns(const std::vector<int>& which) const;  // 0-based column pick
};

// k x n matrix whose column j is (1, a_j, a_j^2, ..., a_j^{k-1}) over the n
// distinct points 0..n-1; every k x k column submatrix is invertible.
Matrix vandermonde(int k, int n, const Field& f);

Matrix mat_mul(const Field& f, const Matrix& A, const Matrix& B);
Matrix mat_inv(const Field& f, const Matrix& A);

}  // namespace bscoop
