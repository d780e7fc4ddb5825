#pragma once

#include <cstring>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cpmcmc/errors.hpp"
#include "cpmcmc/rng.hpp"

namespace cpmcmc {

// Immutable type-erased model state. Copies share storage, so resampling a
// particle cloud moves pointers, not payloads.
class Point {
 public:
  Point() = default;

  template <typename T>
  static Point of(T value) {
    Point p;
    p.impl_ = std::make_shared<Holder<T>>(std::move(value));
    return p;
  }

  template <typename T>
  const T& as() const {
    if (!impl_) throw config_error("Point::as: empty point");
    auto* h = dynamic_cast<const Holder<T>*>(impl_.get());
    if (!h) throw config_error("Point::as: type mismatch");
    return h->value;
  }

  bool empty() const { return impl_ == nullptr; }

 private:
  struct HolderBase {
    virtual ~HolderBase() = default;
  };
  template <typename T>
  struct Holder : HolderBase {
    explicit Holder(T v) : value(std::move(v)) {}
    T value;
  };
  std::shared_ptr<const HolderBase> impl_;
};

// Contract between the generic machinery and a concrete target.
//
// Likelihood tempering is generic: stage weights are powers of the
// likelihood, so models only expose log_likelihood and an inner MCMC
// kernel that leaves the tempered posterior at the given exponent
// invariant. inner_step must be a deterministic function of
// (point, alpha, stream value); the common-random-number coupling of two
// chains is then expressed by running it twice with the same stream.
class Model {
 public:
  virtual ~Model() = default;

  virtual std::string name() const = 0;

  virtual Point sample_prior(RngStream rng) const = 0;

  virtual double log_likelihood(const Point& x) const = 0;

  // One full sweep of the inner kernel targeting the tempered posterior.
  virtual Point inner_step(const Point& x, double alpha, RngStream rng) const = 0;

  // Summary statistics driving kernel-count adaptation. Entry 0 must be
  // the log likelihood.
  virtual std::vector<double> summary_stats(const Point& x) const = 0;

  // Statistics reported by the unbiased estimator.
  virtual std::vector<double> estimands(const Point& x) const = 0;
  virtual std::vector<std::string> estimand_names() const = 0;

  // Supremum of the log likelihood over the support, when available in
  // closed form. Required for rejection initialization at a positive
  // starting exponent.
  virtual std::optional<double> log_likelihood_sup() const { return std::nullopt; }

  // Canonical byte serialization; two states are considered equal exactly
  // when their serializations match.
  virtual std::string serialize(const Point& x) const = 0;

  std::pair<Point, Point> coupled_inner_step(const Point& x, const Point& xbar, double alpha,
                                             RngStream rng) const {
    return {inner_step(x, alpha, rng), inner_step(xbar, alpha, rng)};
  }

  bool points_equal(const Point& a, const Point& b) const { return serialize(a) == serialize(b); }
};

namespace detail {

inline void append_double(std::string& out, double v) {
  char buf[sizeof(double)];
  std::memcpy(buf, &v, sizeof(double));
  out.append(buf, sizeof(double));
}

inline void append_u64(std::string& out, std::uint64_t v) {
  char buf[sizeof(v)];
  std::memcpy(buf, &v, sizeof(v));
  out.append(buf, sizeof(v));
}

}  // namespace detail

}  // namespace cpmcmc
