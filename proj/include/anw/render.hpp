#pragma once

// Dependency-free SVG output. Identical inputs give byte-identical files:
// numbers are printed with fixed precision and nothing time-dependent is
// embedded.

#include <span>
#include <string>

#include "anw/matrix.hpp"

namespace anw::render {

/// Two side-by-side heatmaps: |m_ij| and arg(m_ij) in units of pi.
/// Row index runs down, column index runs across, both 1-based on the axes.
std::string complex_heatmap(const ComplexMatrix& m, const std::string& title);

/// One heatmap of a non-negative real matrix such as a correlation matrix.
std::string real_heatmap(const RealMatrix& m, const std::string& title);

/// Bar charts of |eta_j| (top) and phi_j / pi (bottom) for a pump profile.
std::string pump_bars(std::span<const double> amplitudes, std::span<const double> phases, const std::string& title);

}  // namespace anw::render
