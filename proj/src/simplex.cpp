#include "binbell/simplex.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_multimin.h>

#include <memory>
#include <stdexcept>

namespace binbell {
namespace {

struct VectorDeleter {
  void operator()(gsl_vector* v) const { gsl_vector_free(v); }
};
struct MinimizerDeleter {
  void operator()(gsl_multimin_fminimizer* m) const { gsl_multimin_fminimizer_free(m); }
};
using VectorPtr = std::unique_ptr<gsl_vector, VectorDeleter>;
using MinimizerPtr = std::unique_ptr<gsl_multimin_fminimizer, MinimizerDeleter>;

VectorPtr make_vector(std::size_t n) {
  VectorPtr v(gsl_vector_alloc(n));
  if (!v) throw std::bad_alloc();
  return v;
}

double trampoline(const gsl_vector* x, void* params) {
  const auto& objective = *static_cast<const Objective*>(params);
  return objective(std::span<const double>(x->data, x->size));
}

// GSL's default handler aborts the process.
const bool kHandlerOff = [] {
  gsl_set_error_handler_off();
  return true;
}();

}  // namespace

SimplexResult minimize_simplex(const Objective& objective, std::span<const double> start,
                               const SimplexOptions& options) {
  (void)kHandlerOff;
  const std::size_t n = start.size();
  if (n == 0) throw std::invalid_argument("simplex needs at least one parameter");

  auto x = make_vector(n);
  auto step = make_vector(n);
  for (std::size_t i = 0; i < n; ++i) gsl_vector_set(x.get(), i, start[i]);
  gsl_vector_set_all(step.get(), options.initial_step);

  gsl_multimin_function fn;
  fn.n = n;
  fn.f = &trampoline;
  fn.params = const_cast<Objective*>(&objective);

  MinimizerPtr minimizer(gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, n));
  if (!minimizer) throw std::bad_alloc();
  if (gsl_multimin_fminimizer_set(minimizer.get(), &fn, x.get(), step.get()) != GSL_SUCCESS) {
    throw std::runtime_error("simplex initialization failed");
  }

  SimplexResult result;
  for (int iter = 1; iter <= options.max_iterations; ++iter) {
    result.iterations = iter;
    if (gsl_multimin_fminimizer_iterate(minimizer.get()) != GSL_SUCCESS) break;
    const double size = gsl_multimin_fminimizer_size(minimizer.get());
    if (gsl_multimin_test_size(size, options.size_tolerance) == GSL_SUCCESS) {
      result.converged = true;
      break;
    }
  }
  const gsl_vector* best = gsl_multimin_fminimizer_x(minimizer.get());
  result.x.assign(best->data, best->data + n);
  result.value = gsl_multimin_fminimizer_minimum(minimizer.get());
  return result;
}

}  // namespace binbell
