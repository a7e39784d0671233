#include "corrbiplot/corrdata.hpp"

#include <cmath>
#include <initializer_list>
#include <sstream>

namespace corrbiplot {

namespace {

constexpr double kSymTol = 1e-9;

CorrelationMatrix from_rows(std::vector<std::string> labels,
                            std::initializer_list<std::initializer_list<double>> rows) {
  CorrelationMatrix r;
  r.labels = std::move(labels);
  const std::size_t p = r.labels.size();
  r.values = Matrix(p, p);
  std::size_t i = 0;
  for (const auto& row : rows) {
    std::size_t j = 0;
    for (double v : row) r.values(i, j++) = v;
    ++i;
  }
  validate(r);
  return r;
}

// Table of Manly's goblets correlations (six size measurements).
CorrelationMatrix goblets() {
  return from_rows({"SH", "FD", "BW", "BH", "RD", "SW"},
                   {{1.000, 0.910, 0.797, 0.858, 0.588, 0.289},
                    {0.910, 1.000, 0.829, 0.843, 0.675, 0.487},
                    {0.797, 0.829, 1.000, 0.839, 0.623, 0.581},
                    {0.858, 0.843, 0.839, 1.000, 0.346, 0.251},
                    {0.588, 0.675, 0.623, 0.346, 1.000, 0.690},
                    {0.289, 0.487, 0.581, 0.251, 0.690, 1.000}});
}

// Daudin's milk data (FactoMineR).
CorrelationMatrix milk() {
  return from_rows({"Density", "Fat", "Protein", "Casein", "Dry", "Yield"},
                   {{1.000, 0.402, 0.543, 0.596, 0.753, 0.432},
                    {0.402, 1.000, 0.446, 0.430, 0.683, 0.652},
                    {0.543, 0.446, 1.000, 0.958, 0.668, 0.641},
                    {0.596, 0.430, 0.958, 1.000, 0.695, 0.617},
                    {0.753, 0.683, 0.668, 0.695, 1.000, 0.700},
                    {0.432, 0.652, 0.641, 0.617, 0.700, 1.000}});
}

// Dry beans (Dermason variety), 16 size/shape measurements, stored at the
// printed two-decimal precision.
CorrelationMatrix beans16() {
  return from_rows(
      {"Area", "PM", "MjAL", "MiAL", "AR", "ECC", "CA", "ED", "EXT", "SOL", "ROU", "COM",
       "SF1", "SF2", "SF3", "SF4"},
      {{1.00, 0.97, 0.92, 0.91, 0.13, 0.15, 1.00, 1.00, -0.01, 0.23, -0.04, -0.14, -0.90, -0.67, -0.14, 0.04},
       {0.97, 1.00, 0.95, 0.83, 0.25, 0.26, 0.97, 0.97, -0.06, 0.05, -0.27, -0.26, -0.83, -0.74, -0.26, -0.05},
       {0.92, 0.95, 1.00, 0.68, 0.50, 0.51, 0.92, 0.92, -0.08, 0.16, -0.25, -0.50, -0.68, -0.90, -0.50, -0.00},
       {0.91, 0.83, 0.68, 1.00, -0.29, -0.27, 0.91, 0.91, 0.07, 0.25, 0.19, 0.28, -1.00, -0.31, 0.28, 0.06},
       {0.13, 0.25, 0.50, -0.29, 1.00, 0.98, 0.13, 0.13, -0.19, -0.08, -0.57, -1.00, 0.29, -0.81, -0.99, -0.08},
       {0.15, 0.26, 0.51, -0.27, 0.98, 1.00, 0.15, 0.15, -0.18, -0.06, -0.54, -0.99, 0.27, -0.83, -0.99, -0.06},
       {1.00, 0.97, 0.92, 0.91, 0.13, 0.15, 1.00, 1.00, -0.02, 0.21, -0.05, -0.14, -0.90, -0.67, -0.14, 0.03},
       {1.00, 0.97, 0.92, 0.91, 0.13, 0.15, 1.00, 1.00, -0.01, 0.23, -0.04, -0.14, -0.91, -0.67, -0.14, 0.04},
       {-0.01, -0.06, -0.08, 0.07, -0.19, -0.18, -0.02, -0.01, 1.00, 0.14, 0.21, 0.19, -0.07, 0.14, 0.19, 0.09},
       {0.23, 0.05, 0.16, 0.25, -0.08, -0.06, 0.21, 0.23, 0.14, 1.00, 0.73, 0.09, -0.26, -0.07, 0.09, 0.51},
       {-0.04, -0.27, -0.25, 0.19, -0.57, -0.54, -0.05, -0.04, 0.21, 0.73, 1.00, 0.57, -0.21, 0.44, 0.57, 0.38},
       {-0.14, -0.26, -0.50, 0.28, -1.00, -0.99, -0.14, -0.14, 0.19, 0.09, 0.57, 1.00, -0.29, 0.82, 1.00, 0.11},
       {-0.90, -0.83, -0.68, -1.00, 0.29, 0.27, -0.90, -0.91, -0.07, -0.26, -0.21, -0.29, 1.00, 0.31, -0.28, -0.09},
       {-0.67, -0.74, -0.90, -0.31, -0.81, -0.83, -0.67, -0.67, 0.14, -0.07, 0.44, 0.82, 0.31, 1.00, 0.82, 0.05},
       {-0.14, -0.26, -0.50, 0.28, -0.99, -0.99, -0.14, -0.14, 0.19, 0.09, 0.57, 1.00, -0.28, 0.82, 1.00, 0.10},
       {0.04, -0.05, -0.00, 0.06, -0.08, -0.06, 0.03, 0.04, 0.09, 0.51, 0.38, 0.11, -0.09, 0.05, 0.10, 1.00}});
}

// Reduction that keeps one variable of each nearly-redundant group.
CorrelationMatrix beans10() {
  const CorrelationMatrix full = beans16();
  const std::vector<std::string> keep = {"Area", "PM",  "MjAL", "MiAL", "AR",
                                         "EXT",  "SOL", "ROU",  "SF2",  "SF4"};
  std::vector<std::size_t> idx;
  for (const auto& name : keep)
    for (std::size_t i = 0; i < full.labels.size(); ++i)
      if (full.labels[i] == name) idx.push_back(i);
  CorrelationMatrix r;
  r.labels = keep;
  r.values = Matrix(keep.size(), keep.size());
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (std::size_t j = 0; j < idx.size(); ++j) r.values(i, j) = full.values(idx[i], idx[j]);
  validate(r);
  return r;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur.push_back(c);
    }
  }
  fields.push_back(cur);
  return fields;
}

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

}  // namespace

void validate(const CorrelationMatrix& r) {
  const std::size_t p = r.values.rows();
  if (p < 2) throw Error(Errc::too_few_rows, "correlation matrix needs p >= 2");
  if (r.values.cols() != p) throw Error(Errc::non_square, "correlation matrix must be square");
  if (r.labels.size() != p)
    throw Error(Errc::invalid_argument, "label count does not match matrix size");
  for (std::size_t i = 0; i < p; ++i) {
    if (r.values(i, i) != 1.0)
      throw Error(Errc::diagonal_not_one, "diagonal entry is not 1 at " + r.labels[i]);
    for (std::size_t j = 0; j < p; ++j) {
      if (r.values(i, j) != r.values(j, i))
        throw Error(Errc::asymmetric_beyond_tolerance, "matrix is not symmetric as stored");
      if (std::fabs(r.values(i, j)) > 1.0)
        throw Error(Errc::out_of_range_entry, "correlation outside [-1, 1]");
    }
  }
}

CorrelationMatrix parse_correlation_csv(std::istream& in) {
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    rows.push_back(split_csv_line(line));
  }
  if (rows.size() < 2) throw Error(Errc::io_error, "CSV has no data rows");

  const auto& header = rows.front();
  if (header.size() < 3) throw Error(Errc::non_square, "CSV needs at least two variables");
  std::vector<std::string> labels;
  for (std::size_t j = 1; j < header.size(); ++j) labels.push_back(trim(header[j]));
  const std::size_t p = labels.size();
  if (rows.size() - 1 != p)
    throw Error(Errc::non_square, "CSV body is not square: " + std::to_string(rows.size() - 1) +
                                      " rows for " + std::to_string(p) + " columns");

  Matrix m(p, p);
  for (std::size_t i = 0; i < p; ++i) {
    const auto& row = rows[i + 1];
    if (row.size() != p + 1)
      throw Error(Errc::non_square, "row " + std::to_string(i + 1) + " has wrong field count");
    if (trim(row[0]) != labels[i])
      throw Error(Errc::io_error, "row label '" + trim(row[0]) + "' does not match header '" +
                                      labels[i] + "'");
    for (std::size_t j = 0; j < p; ++j) {
      try {
        std::size_t pos = 0;
        const std::string cell = trim(row[j + 1]);
        m(i, j) = std::stod(cell, &pos);
        if (pos != cell.size()) throw std::invalid_argument(cell);
      } catch (const std::exception&) {
        throw Error(Errc::io_error, "bad numeric cell at row " + std::to_string(i + 1));
      }
    }
  }

  if (max_asymmetry(m) > kSymTol)
    throw Error(Errc::asymmetric_beyond_tolerance, "matrix asymmetry exceeds 1e-9");
  m = symmetrize(m);
  for (std::size_t i = 0; i < p; ++i) {
    if (std::fabs(m(i, i) - 1.0) > kSymTol)
      throw Error(Errc::diagonal_not_one, "diagonal of " + labels[i] + " is not 1");
    m(i, i) = 1.0;
    for (std::size_t j = 0; j < p; ++j) {
      if (std::fabs(m(i, j)) > 1.0 + kSymTol)
        throw Error(Errc::out_of_range_entry, "correlation outside [-1, 1] at (" +
                                                  std::to_string(i) + "," + std::to_string(j) + ")");
      m(i, j) = std::clamp(m(i, j), -1.0, 1.0);
      m(j, i) = m(i, j);
    }
  }

  CorrelationMatrix r{std::move(labels), std::move(m)};
  validate(r);
  return r;
}

CorrelationMatrix parse_correlation_csv(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_correlation_csv(in);
}

std::string to_csv(const CorrelationMatrix& r, int precision) {
  std::ostringstream out;
  out.precision(precision);
  out << "name";
  for (const auto& l : r.labels) out << ',' << l;
  out << '\n';
  for (std::size_t i = 0; i < r.size(); ++i) {
    out << r.labels[i];
    for (std::size_t j = 0; j < r.size(); ++j) out << ',' << r.values(i, j);
    out << '\n';
  }
  return out.str();
}

CorrelationMatrix correlation_from_data(const Matrix& data,
                                        const std::vector<std::string>& labels) {
  const std::size_t n = data.rows();
  const std::size_t p = data.cols();
  if (n < 2) throw Error(Errc::too_few_rows, "need at least two observations");
  if (labels.size() != p) throw Error(Errc::invalid_argument, "label count mismatch");

  Vector mean(p, 0.0);
  for (std::size_t j = 0; j < p; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += data(i, j);
    mean[j] = s / static_cast<double>(n);
  }
  // second pass: centered cross products
  Matrix s(p, p);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t a = 0; a < p; ++a) {
      const double da = data(i, a) - mean[a];
      for (std::size_t b = a; b < p; ++b) s(a, b) += da * (data(i, b) - mean[b]);
    }
  for (std::size_t a = 0; a < p; ++a) {
    if (s(a, a) <= 0.0)
      throw Error(Errc::zero_variance_column, "column " + labels[a] + " has zero variance");
  }
  Matrix m(p, p);
  for (std::size_t a = 0; a < p; ++a) {
    m(a, a) = 1.0;
    for (std::size_t b = a + 1; b < p; ++b) {
      double v = s(a, b) / std::sqrt(s(a, a) * s(b, b));
      v = std::clamp(v, -1.0, 1.0);
      m(a, b) = m(b, a) = v;
    }
  }
  CorrelationMatrix r{labels, std::move(m)};
  validate(r);
  return r;
}

CorrelationMatrix builtin_dataset(std::string_view name) {
  if (name == "goblets") return goblets();
  if (name == "milk") return milk();
  if (name == "beans16") return beans16();
  if (name == "beans10") return beans10();
  throw Error(Errc::unknown_dataset, "unknown dataset: " + std::string(name));
}

std::vector<std::string> builtin_dataset_names() {
  return {"goblets", "milk", "beans16", "beans10"};
}

CorrelationMatrix equicorrelation(std::size_t p, double r) {
  if (p < 2) throw Error(Errc::too_few_rows, "equicorrelation needs p >= 2");
  if (r <= -1.0 / static_cast<double>(p - 1) || r >= 1.0)
    throw Error(Errc::invalid_argument, "equicorrelation requires -1/(p-1) < r < 1");
  CorrelationMatrix c;
  c.values = Matrix(p, p, r);
  for (std::size_t i = 0; i < p; ++i) {
    c.values(i, i) = 1.0;
    c.labels.push_back("V" + std::to_string(i + 1));
  }
  validate(c);
  return c;
}

WeightMatrix offdiag_weights(std::size_t p) {
  if (p < 2) throw Error(Errc::too_few_rows, "weights need p >= 2");
  Matrix w = Matrix::ones(p, p);
  for (std::size_t i = 0; i < p; ++i) w(i, i) = 0.0;
  return WeightMatrix{std::move(w)};
}

WeightMatrix unit_weights(std::size_t p) { return WeightMatrix{Matrix::ones(p, p)}; }

}  // namespace corrbiplot
