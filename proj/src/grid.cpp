#include "ifdcav/grid.hpp"

#include <charconv>
#include <cmath>

namespace ifd {

Axis::Axis(std::string name, Scale scale, std::vector<double> values)
    : name_(std::move(name)), scale_(scale), values_(std::move(values)) {
    if (values_.empty()) throw EmptyGrid("axis '" + name_ + "' has no points");
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!std::isfinite(values_[i]))
            throw InvalidSpec(name_, "axis values must be finite");
        if (i > 0 && !(values_[i] > values_[i - 1]))
            throw InvalidSpec(name_, "axis values must be strictly increasing");
    }
}

Axis Axis::linear(std::string name, double min, double max, std::size_t count) {
    if (count == 0) throw EmptyGrid("axis '" + name + "' has no points");
    if (count > 1 && !(max > min))
        throw InvalidSpec(name, "axis needs max > min");
    std::vector<double> v(count);
    for (std::size_t i = 0; i < count; ++i)
        v[i] = count == 1 ? min
                          : min + static_cast<double>(i) * (max - min) /
                                      static_cast<double>(count - 1);
    return Axis(std::move(name), Scale::Linear, std::move(v));
}

Axis Axis::log(std::string name, double min, double max, std::size_t count) {
    if (count == 0) throw EmptyGrid("axis '" + name + "' has no points");
    if (!(min > 0.0)) throw InvalidSpec(name, "log axis needs min > 0");
    if (count > 1 && !(max > min))
        throw InvalidSpec(name, "axis needs max > min");
    const double lo = std::log(min);
    const double hi = std::log(max);
    std::vector<double> v(count);
    for (std::size_t i = 0; i < count; ++i)
        v[i] = std::exp(lo + static_cast<double>(i) * (hi - lo) /
                                 static_cast<double>(count - 1));
    // endpoints are pinned so the requested bounds appear verbatim
    v.front() = min;
    v.back() = max;
    return Axis(std::move(name), Scale::Log, std::move(v));
}

Axis Axis::list(std::string name, std::vector<double> values) {
    return Axis(std::move(name), Scale::List, std::move(values));
}

double Axis::step_at(std::size_t i) const {
    if (values_.size() < 2) return 0.0;
    if (i + 1 < values_.size()) return values_[i + 1] - values_[i];
    return values_[i] - values_[i - 1];
}

const char* scale_name(Axis::Scale s) {
    switch (s) {
        case Axis::Scale::Linear: return "linear";
        case Axis::Scale::Log: return "log";
        case Axis::Scale::List: return "list";
    }
    return "linear";
}

std::string format_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

}  // namespace ifd
