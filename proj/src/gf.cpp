#include "bscoop/gf.hpp"

namespace bscoop {

namespace {

bool is_prime(int n) {
  if (n < 2) return false;
  for (int f = 2; f * f <= n; ++f)
    if (n % f == 0) return false;
  return true;
}

std::vector<uint32_t> prime_factors(uint32_t n) {
  std::vector<uint32_t> factors;
  for (uint32_t f = 2; f * f <= n; ++f) {
    if (n % f == 0) {
      factors.push_back(f);
      while (n % f == 0) n /= f;
    }
  }
  if (n > 1) factors.push_back(n);
  return factors;
}

}  // namespace

Field::Field(int p, int q, uint32_t reduction_poly) : p_(p), q_(q), poly_(reduction_poly) {
  if (!is_prime(p)) throw std::invalid_argument("field characteristic must be prime");
  if (q < 1) throw std::invalid_argument("extension degree must be >= 1");
  uint64_t order = 1;
  for (int i = 0; i < q; ++i) {
    order *= static_cast<uint64_t>(p);
    if (order > (1u << 16)) throw std::invalid_argument("field order above 2^16");
  }
  order_ = static_cast<uint32_t>(order);
  if (q_ == 1) poly_ = 0;
  if (q_ > 1) {
    // reduction polynomial must be degree q: leading digit nonzero
    uint32_t lead = poly_;
    uint32_t pq = 1;
    for (int i = 0; i < q; ++i) pq *= p;
    if (poly_ < pq || poly_ >= pq * static_cast<uint32_t>(p))
      throw std::invalid_argument("reduction polynomial must have degree q");
    (void)lead;
  }

  if (order_ == 2) {  // GF(2): trivial tables
    log_ = {0, 0};
    exp_ = {1, 1};
    return;
  }

  // find a multiplicative generator, then fill log/antilog tables; a reducible
  // polynomial cannot yield a full cycle and is rejected below
  auto factors = prime_factors(order_ - 1);
  uint32_t generator = 0;
  for (uint32_t g = 2; g < order_; ++g) {
    bool ok = true;
    for (uint32_t f : factors) {
      uint32_t e = (order_ - 1) / f;
      uint32_t acc = 1;
      uint32_t base = g;
      while (e > 0) {
        if (e & 1) acc = slow_mul(acc, base);
        base = slow_mul(base, base);
        e >>= 1;
      }
      if (acc == 1) {
        ok = false;
        break;
      }
    }
    if (ok) {
      generator = g;
      break;
    }
  }
  if (generator == 0) throw std::invalid_argument("no generator: reduction polynomial reducible?");

  log_.assign(order_, 0);
  exp_.assign(order_, 1);
  std::vector<bool> seen(order_, false);
  uint32_t value = 1;
  for (uint32_t i = 0; i < order_ - 1; ++i) {
    if (value == 0 || seen[value])
      throw std::invalid_argument("reduction polynomial is not irreducible");
    seen[value] = true;
    exp_[i] = static_cast<uint16_t>(value);
    log_[value] = static_cast<uint16_t>(i);
    value = slow_mul(value, generator);
  }
  if (value != 1) throw std::invalid_argument("reduction polynomial is not irreducible");
  exp_[order_ - 1] = 1;
}

Field Field::gf256() { return Field(2, 8, 0x11D); }
Field Field::gf16() { return Field(2, 4, 0x13); }
Field Field::prime_field(int p) { return Field(p, 1); }

uint32_t Field::slow_mul(uint32_t a, uint32_t b) const {
  if (q_ == 1) return (a * b) % static_cast<uint32_t>(p_);
  if (p_ == 2) {
    uint32_t result = 0;
    uint32_t aa = a;
    while (b) {
      if (b & 1) result ^= aa;
      aa <<= 1;
      if (aa & order_) aa ^= poly_;
      b >>= 1;
    }
    return result;
  }
  // general p: schoolbook polynomial product, then reduction by the monic poly
  std::vector<uint32_t> da(q_), db(q_);
  uint32_t ta = a, tb = b;
  for (int i = 0; i < q_; ++i) {
    da[i] = ta % p_;
    ta /= p_;
    db[i] = tb % p_;
    tb /= p_;
  }
  std::vector<uint32_t> prod(2 * q_ - 1, 0);
  for (int i = 0; i < q_; ++i)
    for (int j = 0; j < q_; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p_;

  std::vector<uint32_t> red(q_ + 1);
  uint32_t tp = poly_;
  for (int i = 0; i <= q_; ++i) {
    red[i] = tp % p_;
    tp /= p_;
  }
  uint32_t lead_inv = 1;  // leading coefficient inverse mod p
  for (uint32_t c = 1; c < static_cast<uint32_t>(p_); ++c) {
    if ((red[q_] * c) % p_ == 1) {
      lead_inv = c;
      break;
    }
  }
  for (int deg = 2 * q_ - 2; deg >= q_; --deg) {
    if (prod[deg] == 0) continue;
    uint32_t factor = (prod[deg] * lead_inv) % p_;
    for (int i = 0; i <= q_; ++i) {
      int pos = deg - q_ + i;
      prod[pos] = (prod[pos] + p_ - (factor * red[i]) % p_) % p_;
    }
  }
  uint32_t result = 0;
  for (int i = q_ - 1; i >= 0; --i) result = result * p_ + prod[i];
  return result;
}

uint16_t Field::add(uint16_t a, uint16_t b) const {
  if (p_ == 2) return a ^ b;
  if (q_ == 1) return static_cast<uint16_t>((a + b) % p_);
  uint32_t result = 0, mult = 1;
  uint32_t ta = a, tb = b;
  for (int i = 0; i < q_; ++i) {
    result += ((ta % p_ + tb % p_) % p_) * mult;
    mult *= p_;
    ta /= p_;
    tb /= p_;
  }
  return static_cast<uint16_t>(result);
}

uint16_t Field::neg(uint16_t a) const {
  if (p_ == 2) return a;
  if (q_ == 1) return static_cast<uint16_t>((p_ - a % p_) % p_);
  uint32_t result = 0, mult = 1;
  uint32_t ta = a;
  for (int i = 0; i < q_; ++i) {
    result += ((p_ - ta % p_) % p_) * mult;
    mult *= p_;
    ta /= p_;
  }
  return static_cast<uint16_t>(result);
}

uint16_t Field::sub(uint16_t a, uint16_t b) const { return add(a, neg(b)); }

uint16_t Field::mul(uint16_t a, uint16_t b) const {
  if (a == 0 || b == 0) return 0;
  uint32_t s = log_[a] + log_[b];
  if (s >= order_ - 1) s -= order_ - 1;
  return exp_[s];
}

uint16_t Field::inv(uint16_t a) const {
  if (a == 0) throw std::domain_error("inverse of zero");
  return exp_[(order_ - 1 - log_[a]) % (order_ - 1)];
}

uint16_t Field::pow(uint16_t a, long long e) const {
  if (a == 0) {
    if (e == 0) return 1;
    if (e < 0) throw std::domain_error("negative power of zero");
    return 0;
  }
  long long n = order_ - 1;
  long long idx = (static_cast<long long>(log_[a]) * (e % n)) % n;
  if (idx < 0) idx += n;
  return exp_[idx];
}

Matrix Matrix::identity(int n) {
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

Matrix Matrix::columns(const std::vector<int>& which) const {
  Matrix m(rows, static_cast<int>(which.size()));
  for (int r = 0; r < rows; ++r)
    for (size_t c = 0; c < which.size(); ++c) {
      if (which[c] < 0 || which[c] >= cols) throw std::out_of_range("column index");
      m.at(r, static_cast<int>(c)) = at(r, which[c]);
    }
  return m;
}

Matrix vandermonde(int k, int n, const Field& f) {
  if (n > static_cast<int>(f.order())) throw std::invalid_argument("n exceeds field order");
  if (k < 1 || n < k) throw std::invalid_argument("need 1 <= k <= n");
  Matrix m(k, n);
  for (int j = 0; j < n; ++j) {
    uint16_t point = static_cast<uint16_t>(j);
    uint16_t value = 1;
    for (int i = 0; i < k; ++i) {
      m.at(i, j) = value;
      value = f.mul(value, point);
    }
  }
  return m;
}

Matrix mat_mul(const Field& f, const Matrix& A, const Matrix& B) {
  if (A.cols != B.rows) throw std::invalid_argument("mat_mul: dimension mismatch");
  Matrix C(A.rows, B.cols);
  for (int i = 0; i < A.rows; ++i) {
    for (int l = 0; l < A.cols; ++l) {
      uint16_t a = A.at(i, l);
      if (a == 0) continue;
      for (int j = 0; j < B.cols; ++j) {
        C.at(i, j) = f.add(C.at(i, j), f.mul(a, B.at(l, j)));
      }
    }
  }
  return C;
}

Matrix mat_inv(const Field& f, const Matrix& A) {
  if (A.rows != A.cols) throw std::invalid_argument("mat_inv: square matrix required");
  int n = A.rows;
  Matrix work = A;
  Matrix inv = Matrix::identity(n);
  for (int col = 0; col < n; ++col) {
    int pivot = -1;
    for (int r = col; r < n; ++r) {
      if (work.at(r, col) != 0) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) throw SingularMatrixError("mat_inv: singular matrix");
    if (pivot != col) {
      for (int c = 0; c < n; ++c) {
        std::swap(work.a[static_cast<size_t>(pivot) * n + c],
                  work.a[static_cast<size_t>(col) * n + c]);
        std::swap(inv.a[static_cast<size_t>(pivot) * n + c],
                  inv.a[static_cast<size_t>(col) * n + c]);
      }
    }
    uint16_t scale = f.inv(work.at(col, col));
    for (int c = 0; c < n; ++c) {
      work.at(col, c) = f.mul(work.at(col, c), scale);
      inv.at(col, c) = f.mul(inv.at(col, c), scale);
    }
    for (int r = 0; r < n; ++r) {
      if (r == col || work.at(r, col) == 0) continue;
      uint16_t factor = work.at(r, col);
      for (int c = 0; c < n; ++c) {
        work.at(r, c) = f.sub(work.at(r, c), f.mul(factor, work.at(col, c)));
        inv.at(r, c) = f.sub(inv.at(r, c), f.mul(factor, inv.at(col, c)));
      }
    }
  }
  return inv;
}

}  // namespace bscoop
