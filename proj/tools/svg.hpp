#pragma once

#include <string>
#include <vector>

namespace pinball::cli {

/// Minimal self-contained SVG scatter plot (no external references).
class ScatterPlot {
public:
    struct Series {
        std::vector<double> x, y;
        std::string color = "#1f6fb2";
        double radius = 1.4;
        std::string label;
    };

    std::string title, xlabel, ylabel;
    bool log_x = false, log_y = false;
    int width = 860, height = 620;

    Series& add_series(const std::string& label, const std::string& color, double radius = 1.4) {
        series_.push_back(Series{{}, {}, color, radius, label});
        return series_.back();
    }

    std::string to_string() const;

private:
    std::vector<Series> series_;
};

}  // namespace pinball::cli
