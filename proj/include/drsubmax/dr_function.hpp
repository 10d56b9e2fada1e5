#pragma once

#include <atomic>
#include <functional>
#include <memory>
#include <string>

#include "drsubmax/set_function.hpp"
#include "drsubmax/vec.hpp"

namespace drsubmax {

// A non-negative DR-submodular objective with value, gradient and a declared
// smoothness bound. Value semantics; copies share the evaluation counters so
// call counts survive passing by value. All evaluations are pure: identical
// inputs (including any sampling seed baked into the closure) give identical
// outputs, which is what makes whole runs reproducible.
class DrFunction {
 public:
  enum class Mode { Exact, Sampled };
  using EvalFn = std::function<double(const Vec01&)>;
  using GradFn = std::function<RealVec(const Vec01&)>;

  DrFunction(int n, EvalFn eval, GradFn grad, double smoothness_bound, Mode mode,
             std::string family);

  int dimension() const { return n_; }
  Mode mode() const { return mode_; }
  const std::string& family() const { return family_; }
  double smoothness_bound() const { return smoothness_; }

  double value(const Vec01& x) const;
  RealVec gradient(const Vec01& x) const;
  double operator()(const Vec01& x) const { return value(x); }

  long long value_calls() const { return counters_->values.load(); }
  long long gradient_calls() const { return counters_->gradients.load(); }

 private:
  struct Counters {
    std::atomic<long long> values{0};
    std::atomic<long long> gradients{0};
  };
  int n_;
  EvalFn eval_;
  GradFn grad_;
  double smoothness_;
  Mode mode_;
  std::string family_;
  std::shared_ptr<Counters> counters_;
};

// Quadratic objective F(x) = x'Hx/2 + h'x + c with every entry of H <= 0
// (which makes the gradient antitone). Non-negativity over the box is
// certified by corner enumeration for n <= 20; the box minimum of a
// coordinate-wise concave function sits at a corner. For larger n the caller
// must vouch via assume_nonnegative.
DrFunction make_quadratic(const std::vector<RealVec>& H, const RealVec& h, double c,
                          bool assume_nonnegative = false);

// Exact multilinear extension of a non-negative set function; n <= 20.
// The partial derivative at u equals F(x with x_u=1) - F(x with x_u=0) and is
// computed by that formula, not by finite differences. Smoothness bound is
// 2*n*M with M the set function's value bound.
DrFunction multilinear_exact(const SetFunction& f);

// Sampled multilinear extension: unbiased estimates of F and of each partial
// derivative from `sample_count` independent-inclusion draws. The draw stream
// is derived from (seed, query point), so evaluation is pure, and F and its
// gradient share the same draws within a query.
DrFunction multilinear_sampled(const SetFunction& f, long sample_count, uint64_t seed);

}  // namespace drsubmax
