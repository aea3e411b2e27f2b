#include "blockpu/validation.hpp"

#include "blockpu/errors.hpp"

#include <cmath>
#include <string>

namespace blockpu {

TestFunction test_function_from_name(std::string_view name)
{
    if (name == "f1") return TestFunction::f1;
    if (name == "f2") return TestFunction::f2;
    if (name == "f3") return TestFunction::f3;
    if (name == "f4") return TestFunction::f4;
    throw InvalidArgument("unknown test function '" + std::string(name) + "'");
}

std::string_view test_function_name(TestFunction f) noexcept
{
    switch (f) {
    case TestFunction::f1: return "f1";
    case TestFunction::f2: return "f2";
    case TestFunction::f3: return "f3";
    case TestFunction::f4: return "f4";
    }
    return "?";
}

int test_function_dim(TestFunction f) noexcept
{
    return (f == TestFunction::f1 || f == TestFunction::f2) ? 2 : 3;
}

double eval_test_function(TestFunction f, std::span<const double> p)
{
    using std::cos;
    using std::exp;
    if (static_cast<int>(p.size()) != test_function_dim(f)) {
        throw InvalidArgument("test function dimension mismatch");
    }
    switch (f) {
    case TestFunction::f1: {
        const double x = 9.0 * p[0];
        const double y = 9.0 * p[1];
        return 0.75 * exp(-((x - 2) * (x - 2) + (y - 2) * (y - 2)) / 4.0) +
               0.75 * exp(-(x + 1) * (x + 1) / 49.0 - (y + 1) / 10.0) +
               0.5 * exp(-((x - 7) * (x - 7) + (y - 3) * (y - 3)) / 4.0) -
               0.2 * exp(-(x - 4) * (x - 4) - (y - 7) * (y - 7));
    }
    case TestFunction::f2:
        return (1.25 + cos(5.4 * p[1])) / (6.0 + 6.0 * (3.0 * p[0] - 1.0) * (3.0 * p[0] - 1.0));
    case TestFunction::f3: {
        const double x = 9.0 * p[0];
        const double y = 9.0 * p[1];
        const double z = 9.0 * p[2];
        return 0.75 * exp(-((x - 2) * (x - 2) + (y - 2) * (y - 2) + (z - 2) * (z - 2)) / 4.0) +
               0.75 * exp(-(x + 1) * (x + 1) / 49.0 - (y + 1) / 10.0 - (z + 1) / 10.0) +
               0.5 * exp(-((x - 7) * (x - 7) + (y - 3) * (y - 3) + (z - 5) * (z - 5)) / 4.0) -
               0.2 * exp(-(x - 4) * (x - 4) - (y - 7) * (y - 7) - (z - 5) * (z - 5));
    }
    case TestFunction::f4:
        return 64.0 * p[0] * (1 - p[0]) * p[1] * (1 - p[1]) * p[2] * (1 - p[2]);
    }
    return 0.0;
}

std::vector<double> eval_test_function(TestFunction f, const PointSet& pts)
{
    std::vector<double> out(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) out[i] = eval_test_function(f, pts[i]);
    return out;
}

namespace {
void check_lengths(std::span<const double> truth, std::span<const double> approx)
{
    if (truth.size() != approx.size()) {
        throw LengthMismatch(std::to_string(truth.size()) + " vs " + std::to_string(approx.size()));
    }
    if (truth.empty()) throw LengthMismatch("empty error vectors");
}
} // namespace

double mae(std::span<const double> truth, std::span<const double> approx)
{
    check_lengths(truth, approx);
    double worst = 0.0;
    for (std::size_t i = 0; i < truth.size(); ++i) worst = std::max(worst, std::abs(truth[i] - approx[i]));
    return worst;
}

double rmse(std::span<const double> truth, std::span<const double> approx)
{
    check_lengths(truth, approx);
    double sum = 0.0;
    for (std::size_t i = 0; i < truth.size(); ++i) {
        const double e = truth[i] - approx[i];
        sum += e * e;
    }
    return std::sqrt(sum / static_cast<double>(truth.size()));
}

double convergence_rate(double rmse_prev, double rmse_k, double h_prev, double h_k)
{
    if (!(rmse_prev > 0) || !(rmse_k > 0) || !(h_prev > 0) || !(h_k > 0) || h_prev == h_k) {
        throw DegenerateRatio("convergence rate needs positive errors and distinct fill distances");
    }
    return std::log(rmse_prev / rmse_k) / std::log(h_prev / h_k);
}

} // namespace blockpu
