#ifndef POLYA_SERIES_HPP
#define POLYA_SERIES_HPP

#include <cstddef>
#include <vector>

namespace polya {

/// Truncated power series up to a fixed order N, coefficient semantics left
/// to the caller (the moment recursion stores exponential generating
/// coefficients c_n = a_n / n!). Multiplication is the truncated Cauchy
/// product; powers go by binary exponentiation.
template <typename T>
class TruncatedSeries {
  public:
    explicit TruncatedSeries(std::size_t order) : c_(order + 1, T(0)) {}

    std::size_t order() const { return c_.size() - 1; }
    T& operator[](std::size_t k) { return c_[k]; }
    const T& operator[](std::size_t k) const { return c_[k]; }

    static TruncatedSeries one(std::size_t order) {
        TruncatedSeries s(order);
        s.c_[0] = T(1);
        return s;
    }

    friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
        const std::size_t n = a.order();
        TruncatedSeries r(n);
        for (std::size_t i = 0; i <= n; ++i) {
            if (a.c_[i] == T(0)) continue;
            for (std::size_t j = 0; i + j <= n; ++j) r.c_[i + j] += a.c_[i] * b.c_[j];
        }
        return r;
    }

    TruncatedSeries pow(unsigned e) const {
        TruncatedSeries base = *this;
        TruncatedSeries result = one(order());
        while (e > 0) {
            if (e & 1u) result = result * base;
            e >>= 1u;
            if (e > 0) base = base * base;
        }
        return result;
    }

  private:
    std::vector<T> c_;
};

}  // namespace polya

#endif
