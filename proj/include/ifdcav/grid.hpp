#pragma once

#include "ifdcav/errors.hpp"

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace ifd {

// A strictly monotone sweep axis. Either generated (linear/log spacing) or an
// explicit ascending list of values.
class Axis {
public:
    enum class Scale { Linear, Log, List };

    static Axis linear(std::string name, double min, double max, std::size_t count);
    static Axis log(std::string name, double min, double max, std::size_t count);
    static Axis list(std::string name, std::vector<double> values);

    const std::string& name() const noexcept { return name_; }
    Scale scale() const noexcept { return scale_; }
    const std::vector<double>& values() const noexcept { return values_; }
    std::size_t size() const noexcept { return values_.size(); }
    double min() const { return values_.front(); }
    double max() const { return values_.back(); }
    double operator[](std::size_t i) const { return values_[i]; }

    // Spacing between adjacent points around index i (grid-step tolerance for
    // argmax comparisons).
    double step_at(std::size_t i) const;

private:
    Axis(std::string name, Scale scale, std::vector<double> values);

    std::string name_;
    Scale scale_ = Scale::Linear;
    std::vector<double> values_;
};

const char* scale_name(Axis::Scale s);

// Shortest decimal string that round-trips to the same double. Used for every
// numeric field written to CSV/JSON so output is locale-independent and
// byte-stable across runs.
std::string format_double(double v);

// Fixed parameters and provenance attached to a sweep result. The timestamp
// is carried here and ends up only in the run manifest, never in data files,
// so identical runs stay byte-identical.
struct GridMeta {
    std::vector<std::pair<std::string, std::string>> fixed;
    std::string created_at;
};

// A rectangular sweep: cells[i0 * ax1.size() + i1] belongs to
// (ax0[i0], ax1[i1]).
template <typename Cell>
struct SweepGrid {
    Axis ax0;
    Axis ax1;
    std::vector<Cell> cells;
    GridMeta meta;

    SweepGrid(Axis a0, Axis a1)
        : ax0(std::move(a0)), ax1(std::move(a1)), cells(ax0.size() * ax1.size()) {
        if (cells.empty()) throw EmptyGrid("sweep grid has no cells");
    }

    Cell& at(std::size_t i0, std::size_t i1) { return cells[i0 * ax1.size() + i1]; }
    const Cell& at(std::size_t i0, std::size_t i1) const {
        return cells[i0 * ax1.size() + i1];
    }
};

}  // namespace ifd
