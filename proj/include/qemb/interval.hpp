#ifndef QEMB_INTERVAL_HPP
#define QEMB_INTERVAL_HPP

#include <mpfr.h>

#include <optional>
#include <string>

#include "qemb/common.hpp"

namespace qemb {

/* Closed interval [lo, hi] with outward-rounded endpoints at a fixed precision. */
class IReal {
  public:
    explicit IReal(long prec = 128);
    IReal(const Rat& v, long prec);
    IReal(long v, long prec);
    IReal(const IReal&);
    IReal(IReal&&) noexcept;
    IReal& operator=(const IReal&);
    IReal& operator=(IReal&&) noexcept;
    ~IReal();

    long prec() const { return prec_; }

    IReal operator+(const IReal&) const;
    IReal operator-(const IReal&) const;
    IReal operator*(const IReal&) const;
    IReal operator-() const;
    IReal sqrt() const;  // requires lo >= 0

    bool contains(const Rat& v) const;
    bool contains_zero() const;
    /* Sign if the interval excludes 0, else nullopt. */
    std::optional<int> sign() const;
    double midpoint_d() const;
    std::string str() const;

    const mpfr_t& lo() const { return lo_; }
    const mpfr_t& hi() const { return hi_; }

  private:
    long prec_;
    mpfr_t lo_, hi_;
};

}  // namespace qemb

#endif
