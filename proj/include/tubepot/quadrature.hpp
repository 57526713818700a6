#pragma once

#include <functional>

namespace tubepot {

/// Recursive adaptive Simpson on [a, b]. Accepts a panel when the classic
/// |S_fine - S_coarse| <= 15 tol test passes or the depth cap is reached;
/// the returned value carries the usual (S_fine + correction/15) refinement.
double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double tol, int max_depth = 28);

}  // namespace tubepot
