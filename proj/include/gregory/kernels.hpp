#pragma once

// Data-parallel inner loops. Each kernel has a plain serial reference and an
// OpenMP version; the OpenMP versions reduce over fixed-size blocks that are
// combined in index order, so results do not depend on the thread count.

#include "gregory/big_rational.hpp"

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace gregory::kernels {

enum class Execution { Serial, Parallel };

/// One symmetric pair of tanh-sinh nodes: abscissae a + half*complement and
/// b - half*complement, both with the same weight.
struct Node {
    double complement;
    double weight;
};

struct NodeSum {
    double sum = 0.0;      // sum of w * (f(left) + f(right))
    double abs_sum = 0.0;  // sum of |w f| terms, for the roundoff floor
    int evals = 0;
};

using Integrand = std::function<double(double)>;

/// Throws EvaluationError for the lowest-index node with a non-finite value.
NodeSum sum_nodes_serial(std::span<const Node> nodes, double a, double b, const Integrand& f);
NodeSum sum_nodes_parallel(std::span<const Node> nodes, double a, double b, const Integrand& f);

inline NodeSum sum_nodes(Execution ex, std::span<const Node> nodes, double a, double b, const Integrand& f) {
    return ex == Execution::Serial ? sum_nodes_serial(nodes, a, b, f) : sum_nodes_parallel(nodes, a, b, f);
}

/// Index of the first element for which pred is false, or nullopt.
/// The parallel version still reports the lowest failing index.
using IndexPredicate = std::function<bool(std::size_t)>;
std::optional<std::size_t> first_failure_serial(std::size_t count, const IndexPredicate& pred);
std::optional<std::size_t> first_failure_parallel(std::size_t count, const IndexPredicate& pred);

inline std::optional<std::size_t> first_failure(Execution ex, std::size_t count, const IndexPredicate& pred) {
    return ex == Execution::Serial ? first_failure_serial(count, pred) : first_failure_parallel(count, pred);
}

/// Number of worker threads the parallel kernels will use.
int max_threads();

}  // namespace gregory::kernels
