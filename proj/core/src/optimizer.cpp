#include "dsas/optimizer.hpp"

#include <algorithm>
#include <sstream>

#include "dsas/error.hpp"

namespace dsas {

Box Box::uniform(std::size_t dims, double lo, double hi) {
  return Box{std::vector<double>(dims, lo), std::vector<double>(dims, hi)};
}

void Box::clamp(std::span<double> x) const {
  for (std::size_t d = 0; d < x.size(); ++d) x[d] = std::clamp(x[d], lo[d], hi[d]);
}

bool Box::contains(std::span<const double> x) const {
  if (x.size() != dims()) return false;
  for (std::size_t d = 0; d < x.size(); ++d) {
    if (!(x[d] >= lo[d] && x[d] <= hi[d])) return false;
  }
  return true;
}

void Box::validate() const {
  if (lo.empty() || lo.size() != hi.size()) throw ConfigError("search box needs matching, non-empty bounds");
  for (std::size_t d = 0; d < lo.size(); ++d) {
    if (!(lo[d] < hi[d])) throw ConfigError("search box: lo >= hi in dimension " + std::to_string(d));
  }
}

double evaluate_at(const Objective& objective, std::span<const double> x) {
  try {
    return objective(x);
  } catch (const EvaluationError&) {
    throw;
  } catch (const std::exception& e) {
    std::ostringstream pos;
    pos.precision(17);
    pos << '(';
    for (std::size_t d = 0; d < x.size(); ++d) pos << (d ? ", " : "") << x[d];
    pos << ')';
    throw EvaluationError(std::string("fitness evaluation failed at ") + pos.str() + ": " + e.what(),
                          EvaluationError::Location{{}, {}, {}, pos.str()});
  }
}

bool RunRecord::is_monotone() const {
  for (std::size_t k = 1; k < rows.size(); ++k) {
    if (rows[k].iteration <= rows[k - 1].iteration) return false;
    if (rows[k].best_fitness > rows[k - 1].best_fitness) return false;
  }
  return true;
}

std::optional<std::size_t> RunRecord::first_reaching(double threshold) const {
  for (const auto& row : rows) {
    if (row.best_fitness <= threshold) return row.iteration;
  }
  return std::nullopt;
}

double RunRecord::best_at(std::size_t iteration) const {
  double best = rows.empty() ? 0.0 : rows.front().best_fitness;
  for (const auto& row : rows) {
    if (row.iteration > iteration) break;
    best = row.best_fitness;
  }
  return best;
}

}  // namespace dsas
