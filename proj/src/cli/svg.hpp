#pragma once

#include <optional>
#include <string>
#include <vector>

namespace hamlab::cli::svg {

struct Series {
  std::string name;
  std::vector<double> x;
  std::vector<double> y;
  bool dashed = false;
};

struct LineChart {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<Series> series;
};

/// One column of horizontal bars per ladder.
struct Ladder {
  std::string name;
  std::vector<double> levels;
};

struct LadderChart {
  std::string title;
  std::string y_label;
  std::vector<Ladder> ladders;
};

/// Self-contained SVG documents. `stamp` (if any) lands in a comment; with
/// no stamp the output depends on the data only.
std::string render(const LineChart& chart, const std::optional<std::string>& stamp);
std::string render(const LadderChart& chart, const std::optional<std::string>& stamp);

}  // namespace hamlab::cli::svg
