#pragma once

// Contingency-table independence tests: Pearson chi-square, standardized
// residuals (Agresti's adjusted form plus the plain Pearson variant), and the
// log-likelihood-ratio G-test. Tail probabilities come from an in-house
// regularized incomplete gamma (series + continued fraction), so there is no
// statistics dependency.

#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

#include "embias/error.hpp"

namespace embias {

class ContingencyTable {
public:
  ContingencyTable(std::vector<std::string> row_labels,
                   std::vector<std::string> col_labels,
                   std::vector<std::vector<uint64_t>> counts)
      : row_labels_(std::move(row_labels)),
        col_labels_(std::move(col_labels)),
        counts_(std::move(counts)) {
    if (row_labels_.size() < 2 || col_labels_.size() < 2) {
      throw DataError("contingency table must be at least 2x2");
    }
    if (counts_.size() != row_labels_.size()) {
      throw DataError("contingency table has " + std::to_string(counts_.size()) +
                      " count rows for " + std::to_string(row_labels_.size()) +
                      " row labels");
    }
    row_sums_.assign(rows(), 0);
    col_sums_.assign(cols(), 0);
    for (std::size_t i = 0; i < rows(); ++i) {
      if (counts_[i].size() != cols()) {
        throw DataError("contingency table row '" + row_labels_[i] + "' has " +
                        std::to_string(counts_[i].size()) + " cells, expected " +
                        std::to_string(cols()));
      }
      for (std::size_t j = 0; j < cols(); ++j) {
        row_sums_[i] += counts_[i][j];
        col_sums_[j] += counts_[i][j];
        total_ += counts_[i][j];
      }
    }
    for (std::size_t i = 0; i < rows(); ++i) {
      if (row_sums_[i] == 0) {
        throw DataError("contingency table row '" + row_labels_[i] + "' sums to zero");
      }
    }
    for (std::size_t j = 0; j < cols(); ++j) {
      if (col_sums_[j] == 0) {
        throw DataError("contingency table column '" + col_labels_[j] + "' sums to zero");
      }
    }
  }

  std::size_t rows() const { return row_labels_.size(); }
  std::size_t cols() const { return col_labels_.size(); }
  uint64_t count(std::size_t i, std::size_t j) const { return counts_.at(i).at(j); }
  const std::string& row_label(std::size_t i) const { return row_labels_.at(i); }
  const std::string& col_label(std::size_t j) const { return col_labels_.at(j); }
  uint64_t row_sum(std::size_t i) const { return row_sums_.at(i); }
  uint64_t col_sum(std::size_t j) const { return col_sums_.at(j); }
  uint64_t total() const { return total_; }

  // E_ij = (row margin x column margin) / total; positive because margins are.
  double expected(std::size_t i, std::size_t j) const {
    return static_cast<double>(row_sum(i)) * static_cast<double>(col_sum(j)) /
           static_cast<double>(total_);
  }

  unsigned df() const {
    return static_cast<unsigned>((rows() - 1) * (cols() - 1));
  }

  // CSV layout: header "corner,colA,colB,..."; each data row "label,n,n,...".
  static ContingencyTable load_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open table file: " + path);
    std::string line;
    uint64_t line_no = 0;
    auto next_line = [&]() -> bool {
      while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!line.empty()) return true;
      }
      return false;
    };
    auto split = [](const std::string& s) {
      std::vector<std::string> cells;
      std::size_t start = 0;
      while (true) {
        const std::size_t comma = s.find(',', start);
        std::string cell = s.substr(start, comma == std::string::npos
                                               ? std::string::npos
                                               : comma - start);
        while (!cell.empty() && (cell.front() == ' ' || cell.front() == '\t')) {
          cell.erase(cell.begin());
        }
        while (!cell.empty() && (cell.back() == ' ' || cell.back() == '\t')) {
          cell.pop_back();
        }
        cells.push_back(std::move(cell));
        if (comma == std::string::npos) break;
        start = comma + 1;
      }
      return cells;
    };

    if (!next_line()) throw DataError("table file is empty: " + path);
    std::vector<std::string> header = split(line);
    if (header.size() < 3) {
      throw DataError("table file " + path + " line " + std::to_string(line_no) +
                      ": header needs a corner cell and at least 2 column labels");
    }
    std::vector<std::string> col_labels(header.begin() + 1, header.end());

    std::vector<std::string> row_labels;
    std::vector<std::vector<uint64_t>> counts;
    while (next_line()) {
      std::vector<std::string> cells = split(line);
      if (cells.size() != header.size()) {
        throw DataError("table file " + path + " line " + std::to_string(line_no) +
                        ": expected " + std::to_string(header.size()) +
                        " cells, found " + std::to_string(cells.size()));
      }
      row_labels.push_back(cells[0]);
      std::vector<uint64_t> row;
      for (std::size_t j = 1; j < cells.size(); ++j) {
        uint64_t v = 0;
        const char* first = cells[j].data();
        const char* last = first + cells[j].size();
        auto [p, ec] = std::from_chars(first, last, v);
        if (ec != std::errc() || p != last || cells[j].empty()) {
          throw DataError("table file " + path + " line " + std::to_string(line_no) +
                          ": cell '" + cells[j] + "' is not a nonnegative integer");
        }
        row.push_back(v);
      }
      counts.push_back(std::move(row));
    }
    if (row_labels.size() < 2) {
      throw DataError("table file " + path + " needs at least 2 data rows");
    }
    return ContingencyTable(std::move(row_labels), std::move(col_labels),
                            std::move(counts));
  }

private:
  std::vector<std::string> row_labels_;
  std::vector<std::string> col_labels_;
  std::vector<std::vector<uint64_t>> counts_;
  std::vector<uint64_t> row_sums_;
  std::vector<uint64_t> col_sums_;
  uint64_t total_ = 0;
};

namespace detail {

// Lower regularized gamma P(a,x) by power series; valid for x < a+1.
inline double gamma_p_series(double a, double x) {
  double sum = 1.0 / a;
  double term = sum;
  for (int n = 1; n < 2000; ++n) {
    term *= x / (a + static_cast<double>(n));
    sum += term;
    if (std::fabs(term) < std::fabs(sum) * 1e-16) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Upper regularized gamma Q(a,x) by continued fraction (modified Lentz);
// valid for x >= a+1.
inline double gamma_q_continued_fraction(double a, double x) {
  constexpr double tiny = 1e-300;
  constexpr double eps = 1e-16;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 2000; ++i) {
    const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < eps) break;
  }
  return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

inline double regularized_gamma_q(double a, double x) {
  if (!(a > 0.0) || x < 0.0) throw DataError("incomplete gamma: invalid arguments");
  if (x == 0.0) return 1.0;
  if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
  return gamma_q_continued_fraction(a, x);
}

// Upper tail of the chi-square distribution: Q(df/2, s/2).
inline double chi_square_tail(double statistic, unsigned df) {
  if (statistic <= 0.0) return 1.0;
  return regularized_gamma_q(static_cast<double>(df) / 2.0, statistic / 2.0);
}

}  // namespace detail

struct TableTest {
  double statistic = 0.0;
  unsigned df = 0;
  double p_value = 1.0;
};

inline TableTest chi_square(const ContingencyTable& t) {
  double stat = 0.0;
  for (std::size_t i = 0; i < t.rows(); ++i) {
    for (std::size_t j = 0; j < t.cols(); ++j) {
      const double e = t.expected(i, j);
      const double diff = static_cast<double>(t.count(i, j)) - e;
      stat += diff * diff / e;
    }
  }
  return {stat, t.df(), detail::chi_square_tail(stat, t.df())};
}

// Agresti's adjusted standardized residuals:
//   r_ij = (O - E) / sqrt(E (1 - row_i/total) (1 - col_j/total))
inline std::vector<std::vector<double>> standardized_residuals(const ContingencyTable& t) {
  const double total = static_cast<double>(t.total());
  std::vector<std::vector<double>> out(t.rows(), std::vector<double>(t.cols(), 0.0));
  for (std::size_t i = 0; i < t.rows(); ++i) {
    const double pr = static_cast<double>(t.row_sum(i)) / total;
    for (std::size_t j = 0; j < t.cols(); ++j) {
      const double pc = static_cast<double>(t.col_sum(j)) / total;
      const double e = t.expected(i, j);
      out[i][j] = (static_cast<double>(t.count(i, j)) - e) /
                  std::sqrt(e * (1.0 - pr) * (1.0 - pc));
    }
  }
  return out;
}

// Plain Pearson residuals (O - E)/sqrt(E); their squares sum to chi-square.
inline std::vector<std::vector<double>> pearson_residuals(const ContingencyTable& t) {
  std::vector<std::vector<double>> out(t.rows(), std::vector<double>(t.cols(), 0.0));
  for (std::size_t i = 0; i < t.rows(); ++i) {
    for (std::size_t j = 0; j < t.cols(); ++j) {
      const double e = t.expected(i, j);
      out[i][j] = (static_cast<double>(t.count(i, j)) - e) / std::sqrt(e);
    }
  }
  return out;
}

// G = 2 sum O ln(O/E); empty cells contribute nothing.
inline TableTest g_test(const ContingencyTable& t) {
  double g = 0.0;
  for (std::size_t i = 0; i < t.rows(); ++i) {
    for (std::size_t j = 0; j < t.cols(); ++j) {
      const uint64_t o = t.count(i, j);
      if (o == 0) continue;
      g += static_cast<double>(o) * std::log(static_cast<double>(o) / t.expected(i, j));
    }
  }
  g *= 2.0;
  return {g, t.df(), detail::chi_square_tail(g, t.df())};
}

}  // namespace embias
