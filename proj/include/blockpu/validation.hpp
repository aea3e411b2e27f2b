#pragma once

#include "blockpu/geometry.hpp"

#include <span>
#include <string_view>
#include <vector>

namespace blockpu {

/// Benchmark functions: f1 (2D Franke), f2 (2D), f3 (3D Franke), f4 (3D bubble).
enum class TestFunction { f1, f2, f3, f4 };

TestFunction test_function_from_name(std::string_view name);
std::string_view test_function_name(TestFunction f) noexcept;
int test_function_dim(TestFunction f) noexcept;

double eval_test_function(TestFunction f, std::span<const double> p);
std::vector<double> eval_test_function(TestFunction f, const PointSet& pts);

/// Maximum absolute error.
double mae(std::span<const double> truth, std::span<const double> approx);
/// Root-mean-square error.
double rmse(std::span<const double> truth, std::span<const double> approx);

/// log(rmse_prev / rmse_k) / log(h_prev / h_k).
double convergence_rate(double rmse_prev, double rmse_k, double h_prev, double h_k);

} // namespace blockpu
