#include "gregory/kernels.hpp"

#include "gregory/errors.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace gregory::kernels {

namespace {

constexpr std::size_t kBlock = 64;

struct Failure {
    std::size_t index = std::numeric_limits<std::size_t>::max();
    double abscissa = 0.0;
};

// Sums nodes [begin, end); records the first non-finite evaluation instead of throwing.
NodeSum sum_range(std::span<const Node> nodes, std::size_t begin, std::size_t end, double a, double b,
                  const Integrand& f, Failure& failure) {
    const double half = 0.5 * (b - a);
    NodeSum out;
    for (std::size_t i = begin; i < end; ++i) {
        const Node& node = nodes[i];
        const double offset = half * node.complement;
        const double xl = a + offset;
        const double xr = b - offset;
        const double fl = f(xl);
        const double fr = f(xr);
        out.evals += 2;
        if (!std::isfinite(fl) || !std::isfinite(fr)) {
            failure = {i, std::isfinite(fl) ? xr : xl};
            return out;
        }
        out.sum += node.weight * (fl + fr);
        out.abs_sum += node.weight * (std::fabs(fl) + std::fabs(fr));
    }
    return out;
}

void raise(const Failure& failure) {
    throw EvaluationError("non-finite integrand value", failure.abscissa);
}

}  // namespace

NodeSum sum_nodes_serial(std::span<const Node> nodes, double a, double b, const Integrand& f) {
    Failure failure;
    NodeSum out = sum_range(nodes, 0, nodes.size(), a, b, f, failure);
    if (failure.index != std::numeric_limits<std::size_t>::max()) raise(failure);
    return out;
}

NodeSum sum_nodes_parallel(std::span<const Node> nodes, double a, double b, const Integrand& f) {
    const std::size_t blocks = (nodes.size() + kBlock - 1) / kBlock;
    std::vector<NodeSum> partial(blocks);
    std::vector<Failure> failures(blocks);
    std::vector<std::exception_ptr> errors(blocks);
    const auto nblocks = static_cast<long>(blocks);

#pragma omp parallel for schedule(static)
    for (long blk = 0; blk < nblocks; ++blk) {
        const auto k = static_cast<std::size_t>(blk);
        const std::size_t begin = k * kBlock;
        const std::size_t end = std::min(nodes.size(), begin + kBlock);
        try {
            partial[k] = sum_range(nodes, begin, end, a, b, f, failures[k]);
        } catch (...) {
            errors[k] = std::current_exception();
        }
    }

    NodeSum out;
    for (std::size_t k = 0; k < blocks; ++k) {
        if (errors[k]) std::rethrow_exception(errors[k]);
        if (failures[k].index != std::numeric_limits<std::size_t>::max()) raise(failures[k]);
        out.sum += partial[k].sum;
        out.abs_sum += partial[k].abs_sum;
        out.evals += partial[k].evals;
    }
    return out;
}

std::optional<std::size_t> first_failure_serial(std::size_t count, const IndexPredicate& pred) {
    for (std::size_t i = 0; i < count; ++i) {
        if (!pred(i)) return i;
    }
    return std::nullopt;
}

std::optional<std::size_t> first_failure_parallel(std::size_t count, const IndexPredicate& pred) {
    std::size_t first = std::numeric_limits<std::size_t>::max();
    std::exception_ptr error;
    const auto n = static_cast<long>(count);

#pragma omp parallel for schedule(dynamic, 16) reduction(min : first)
    for (long i = 0; i < n; ++i) {
        const auto idx = static_cast<std::size_t>(i);
        if (idx > first) continue;
        bool ok = true;
        try {
            ok = pred(idx);
        } catch (...) {
#pragma omp critical(gregory_first_failure)
            if (!error) error = std::current_exception();
        }
        if (!ok) first = std::min(first, idx);
    }

    if (error) std::rethrow_exception(error);
    if (first == std::numeric_limits<std::size_t>::max()) return std::nullopt;
    return first;
}

int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

}  // namespace gregory::kernels
