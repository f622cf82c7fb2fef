#pragma once

/**
 * @file poly.hpp
 * @brief Dense univariate polynomials over an exact field.
 *
 * Coefficients are stored by ascending degree and kept trimmed: the zero
 * polynomial has an empty coefficient list and degree -1.
 */

#include <vector>

#include "klp/errors.hpp"

namespace klp {

template <class F>
class DensePoly {
public:
    using Spec = typename F::Spec;

    explicit DensePoly(const Spec& spec) : spec_(spec) {}
    DensePoly(std::vector<F> coeffs, const Spec& spec) : spec_(spec), c_(std::move(coeffs)) {
        for (const F& x : c_)
            if (!(x.spec() == spec_)) throw mixed_field_error("polynomial coefficient from another field");
        trim();
    }

    static DensePoly constant(const F& value) { return DensePoly({value}, value.spec()); }

    /// x - root factors multiplied out: prod_i (x - r_i), monic of degree roots.size().
    static DensePoly from_roots(const std::vector<F>& roots, const Spec& spec) {
        DensePoly acc({F::one(spec)}, spec);
        for (const F& r : roots)
            acc = acc * DensePoly({-r, F::one(spec)}, spec);
        return acc;
    }

    const Spec& spec() const { return spec_; }
    long long degree() const { return static_cast<long long>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }

    F coeff(long long k) const {
        if (k < 0 || k >= static_cast<long long>(c_.size())) return F::zero(spec_);
        return c_[static_cast<std::size_t>(k)];
    }
    const std::vector<F>& coeffs() const { return c_; }

    F eval(const F& x) const {
        F acc = F::zero(spec_);
        for (std::size_t k = c_.size(); k-- > 0;)
            acc = acc * x + c_[k];
        return acc;
    }

    DensePoly operator-() const {
        DensePoly r(spec_);
        r.c_.reserve(c_.size());
        for (const F& x : c_) r.c_.push_back(-x);
        return r;
    }

    friend DensePoly operator+(const DensePoly& a, const DensePoly& b) {
        a.check(b);
        DensePoly r(a.spec_);
        const std::size_t n = std::max(a.c_.size(), b.c_.size());
        r.c_.reserve(n);
        for (std::size_t k = 0; k < n; ++k)
            r.c_.push_back(a.coeff(static_cast<long long>(k)) + b.coeff(static_cast<long long>(k)));
        r.trim();
        return r;
    }
    friend DensePoly operator-(const DensePoly& a, const DensePoly& b) { return a + (-b); }
    friend DensePoly operator*(const DensePoly& a, const DensePoly& b) {
        a.check(b);
        if (a.is_zero() || b.is_zero()) return DensePoly(a.spec_);
        DensePoly r(a.spec_);
        r.c_.assign(a.c_.size() + b.c_.size() - 1, F::zero(a.spec_));
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j)
                r.c_[i + j] += a.c_[i] * b.c_[j];
        r.trim();
        return r;
    }
    friend DensePoly operator*(const F& s, const DensePoly& a) {
        DensePoly r(a.spec_);
        r.c_.reserve(a.c_.size());
        for (const F& x : a.c_) r.c_.push_back(s * x);
        r.trim();
        return r;
    }

    bool operator==(const DensePoly& o) const {
        check(o);
        return c_ == o.c_;
    }
    bool operator!=(const DensePoly& o) const { return !(*this == o); }

private:
    void check(const DensePoly& o) const {
        if (!(spec_ == o.spec_)) throw mixed_field_error("polynomials over different fields");
    }
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }

    Spec spec_;
    std::vector<F> c_;
};

} // namespace klp
