#pragma once

// Two-parameter distribution families on [0,1] (beta, logit-normal,
// probit-normal), triangular distributions and two-component mixtures,
// and the mirror transform π → 1−π.

#include <cmath>
#include <stdexcept>
#include <utility>

#include "mcmap/specfun.hpp"

namespace mcmap {

struct BetaParams {
    double alpha;
    double beta;
    bool valid() const {
        return std::isfinite(alpha) && std::isfinite(beta) && alpha > 0.0 && beta > 0.0;
    }
};

struct LogitNormalParams {
    double mu;
    double sigma;
    bool valid() const { return std::isfinite(mu) && std::isfinite(sigma) && sigma > 0.0; }
};

struct ProbitNormalParams {
    double mu;
    double sigma;
    bool valid() const { return std::isfinite(mu) && std::isfinite(sigma) && sigma > 0.0; }
};

class BetaDist {
  public:
    explicit BetaDist(BetaParams p) : p_(p) {
        if (!p.valid()) throw std::domain_error("BetaDist: shape parameters must be positive");
    }
    BetaDist(double alpha, double beta) : BetaDist(BetaParams{alpha, beta}) {}

    const BetaParams& params() const { return p_; }
    double mean() const { return p_.alpha / (p_.alpha + p_.beta); }

    double cdf(double x) const {
        if (x <= 0.0) return 0.0;
        if (x >= 1.0) return 1.0;
        return reg_inc_beta(x, p_.alpha, p_.beta);
    }

    double pdf(double x) const {
        if (x <= 0.0 || x >= 1.0) return 0.0;
        const double lb = std::lgamma(p_.alpha + p_.beta) - std::lgamma(p_.alpha) -
                          std::lgamma(p_.beta);
        return std::exp(lb + (p_.alpha - 1.0) * std::log(x) +
                        (p_.beta - 1.0) * std::log1p(-x));
    }

  private:
    BetaParams p_;
};

class LogitNormalDist {
  public:
    explicit LogitNormalDist(LogitNormalParams p) : p_(p) {
        if (!p.valid()) throw std::domain_error("LogitNormalDist: sigma must be positive");
    }
    LogitNormalDist(double mu, double sigma) : LogitNormalDist(LogitNormalParams{mu, sigma}) {}

    const LogitNormalParams& params() const { return p_; }

    // Endpoints take their limit values so integrands stay total on [0,1].
    double cdf(double x) const {
        if (x <= 0.0) return 0.0;
        if (x >= 1.0) return 1.0;
        return std_normal_cdf((logit(x) - p_.mu) / p_.sigma);
    }

    double pdf(double x) const {
        if (x <= 0.0 || x >= 1.0) return 0.0;
        const double z = (logit(x) - p_.mu) / p_.sigma;
        return std_normal_pdf(z) / (p_.sigma * x * (1.0 - x));
    }

    double quantile(double p) const {
        return expit(p_.mu + p_.sigma * std_normal_quantile(p));
    }

  private:
    LogitNormalParams p_;
};

class ProbitNormalDist {
  public:
    explicit ProbitNormalDist(ProbitNormalParams p) : p_(p) {
        if (!p.valid()) throw std::domain_error("ProbitNormalDist: sigma must be positive");
    }
    ProbitNormalDist(double mu, double sigma)
        : ProbitNormalDist(ProbitNormalParams{mu, sigma}) {}

    const ProbitNormalParams& params() const { return p_; }

    double cdf(double x) const {
        if (x <= 0.0) return 0.0;
        if (x >= 1.0) return 1.0;
        return std_normal_cdf((std_normal_quantile(x) - p_.mu) / p_.sigma);
    }

    double pdf(double x) const {
        if (x <= 0.0 || x >= 1.0) return 0.0;
        const double q = std_normal_quantile(x);
        return std_normal_pdf((q - p_.mu) / p_.sigma) / (p_.sigma * std_normal_pdf(q));
    }

    double quantile(double p) const {
        return std_normal_cdf(p_.mu + p_.sigma * std_normal_quantile(p));
    }

  private:
    ProbitNormalParams p_;
};

// Triangular distribution on [lower, upper] with peak at mode; the mode may
// coincide with either bound.
class Triangular {
  public:
    Triangular(double lower, double upper, double mode)
        : lower_(lower), upper_(upper), mode_(mode) {
        if (!(lower < upper) || !(lower <= mode && mode <= upper))
            throw std::domain_error("Triangular: requires lower <= mode <= upper, lower < upper");
    }

    double lower() const { return lower_; }
    double upper() const { return upper_; }
    double mode() const { return mode_; }

    double pdf(double x) const {
        if (x < lower_ || x > upper_) return 0.0;
        const double w = upper_ - lower_;
        if (x == mode_) return 2.0 / w;
        if (x < mode_) return 2.0 * (x - lower_) / (w * (mode_ - lower_));
        return 2.0 * (upper_ - x) / (w * (upper_ - mode_));
    }

    double cdf(double x) const {
        if (x <= lower_) return 0.0;
        if (x >= upper_) return 1.0;
        const double w = upper_ - lower_;
        if (x <= mode_) {
            const double d = x - lower_;
            // left branch also covers x == mode, where both branches agree
            return d * d / (w * (mode_ - lower_));
        }
        const double d = upper_ - x;
        return 1.0 - d * d / (w * (upper_ - mode_));
    }

    double quantile(double p) const {
        if (!(p >= 0.0 && p <= 1.0))
            throw std::domain_error("Triangular::quantile: p must lie in [0,1]");
        const double w = upper_ - lower_;
        const double pm = (mode_ - lower_) / w;
        if (p <= pm) return lower_ + std::sqrt(p * w * (mode_ - lower_));
        return upper_ - std::sqrt((1.0 - p) * w * (upper_ - mode_));
    }

  private:
    double lower_, upper_, mode_;
};

class TwoComponentMixture {
  public:
    TwoComponentMixture(Triangular comp1, double w1, Triangular comp2)
        : c1_(std::move(comp1)), c2_(std::move(comp2)), w1_(w1) {
        if (!(w1 > 0.0 && w1 < 1.0))
            throw std::domain_error("TwoComponentMixture: weight must lie in (0,1)");
    }

    const Triangular& comp1() const { return c1_; }
    const Triangular& comp2() const { return c2_; }
    double weight1() const { return w1_; }

    double cdf(double x) const { return w1_ * c1_.cdf(x) + (1.0 - w1_) * c2_.cdf(x); }
    double pdf(double x) const { return w1_ * c1_.pdf(x) + (1.0 - w1_) * c2_.pdf(x); }

  private:
    Triangular c1_, c2_;
    double w1_;
};

// Law of 1−π: F_mirror(x) = 1 − F(1−x).
template <class D>
class Mirrored {
  public:
    explicit Mirrored(D base) : base_(std::move(base)) {}
    const D& base() const { return base_; }
    double cdf(double x) const { return 1.0 - base_.cdf(1.0 - x); }
    double pdf(double x) const { return base_.pdf(1.0 - x); }
    double quantile(double p) const { return 1.0 - base_.quantile(1.0 - p); }

  private:
    D base_;
};

template <class D>
Mirrored<D> mirror(D d) {
    return Mirrored<D>(std::move(d));
}

}  // namespace mcmap
