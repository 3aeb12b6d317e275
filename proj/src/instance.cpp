#include "ilpdp/instance.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <sstream>

namespace ilpdp {

IlpInstance::IlpInstance(std::size_t rows, std::size_t cols, std::vector<std::int64_t> a, std::vector<std::int64_t> b,
                         std::optional<std::vector<std::int64_t>> c)
    : rows_(rows), cols_(cols), a_(std::move(a)), b_(std::move(b)), feasibility_only_(!c.has_value()) {
  if (rows_ == 0) throw std::invalid_argument("instance needs at least one row");
  if (a_.size() != rows_ * cols_) throw std::invalid_argument("matrix size does not match m x n");
  if (b_.size() != rows_) throw std::invalid_argument("right-hand side length does not match m");
  if (c) {
    if (c->size() != cols_) throw std::invalid_argument("objective length does not match n");
    c_ = std::move(*c);
  } else {
    c_.assign(cols_, 0);
  }
}

std::vector<std::int64_t> IlpInstance::column(std::size_t col) const {
  std::vector<std::int64_t> out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = a(r, col);
  return out;
}

IlpInstance IlpInstance::with_rhs(std::vector<std::int64_t> b) const {
  return IlpInstance(rows_, cols_, a_, std::move(b),
                     feasibility_only_ ? std::nullopt : std::optional<std::vector<std::int64_t>>(c_));
}

IlpInstance IlpInstance::without_objective() const { return IlpInstance(rows_, cols_, a_, b_, std::nullopt); }

std::string_view to_string(Status s) {
  switch (s) {
    case Status::Optimal: return "optimal";
    case Status::Feasible: return "feasible";
    case Status::Infeasible: return "infeasible";
    case Status::Unbounded: return "unbounded";
  }
  return "unknown";
}

namespace {

struct Line {
  std::size_t number;
  std::vector<std::int64_t> values;
};

std::vector<std::int64_t> parse_integers(std::string_view text, std::size_t line_no) {
  std::vector<std::int64_t> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t' || text[pos] == '\r')) ++pos;
    if (pos == text.size()) break;
    std::size_t end = pos;
    while (end < text.size() && text[end] != ' ' && text[end] != '\t' && text[end] != '\r') ++end;
    std::string_view token = text.substr(pos, end - pos);
    std::string_view digits = token;
    if (!digits.empty() && digits.front() == '+') digits.remove_prefix(1);
    std::int64_t value = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
    if (ec == std::errc::result_out_of_range)
      throw ParseError(line_no, "integer '" + std::string(token) + "' exceeds 64-bit capacity");
    if (ec != std::errc() || ptr != digits.data() + digits.size())
      throw ParseError(line_no, "malformed integer '" + std::string(token) + "'");
    out.push_back(value);
    pos = end;
  }
  return out;
}

std::vector<Line> content_lines(std::string_view text) {
  std::vector<Line> lines;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    ++line_no;
    std::string_view raw = text.substr(start, end - start);
    const auto first = raw.find_first_not_of(" \t\r");
    if (first != std::string_view::npos && raw[first] != '#') lines.push_back({line_no, parse_integers(raw, line_no)});
    if (end == text.size()) break;
    start = end + 1;
  }
  return lines;
}

void expect_count(const Line& line, std::size_t expected, const char* what) {
  if (line.values.size() != expected)
    throw ParseError(line.number, std::string("dimension mismatch: ") + what + " has " +
                                      std::to_string(line.values.size()) + " entries, " + std::to_string(expected) +
                                      " expected");
}

}  // namespace

IlpInstance parse_instance(std::string_view text) {
  const auto lines = content_lines(text);
  if (lines.empty()) throw ParseError(1, "empty instance: expected header 'm n'");
  const Line& header = lines[0];
  if (header.values.size() != 2) throw ParseError(header.number, "header must be 'm n'");
  if (header.values[0] < 1) throw ParseError(header.number, "m must be at least 1");
  if (header.values[1] < 0) throw ParseError(header.number, "n must be nonnegative");
  const auto m = static_cast<std::size_t>(header.values[0]);
  const auto n = static_cast<std::size_t>(header.values[1]);

  std::size_t cursor = 1;
  auto next = [&](const char* what) -> const Line& {
    if (cursor >= lines.size()) {
      const std::size_t last = lines.back().number;
      throw ParseError(last + 1, std::string("unexpected end of input, expected ") + what);
    }
    return lines[cursor++];
  };

  std::vector<std::int64_t> a;
  a.reserve(m * n);
  if (n > 0) {
    for (std::size_t r = 0; r < m; ++r) {
      const Line& row = next("matrix row");
      expect_count(row, n, "matrix row");
      a.insert(a.end(), row.values.begin(), row.values.end());
    }
  }
  const Line& rhs = next("right-hand side");
  expect_count(rhs, m, "right-hand side");
  std::optional<std::vector<std::int64_t>> c;
  if (cursor < lines.size()) {
    const Line& obj = lines[cursor++];
    expect_count(obj, n, "objective");
    c = obj.values;
  } else if (n == 0) {
    c = std::vector<std::int64_t>{};
  }
  if (cursor < lines.size()) throw ParseError(lines[cursor].number, "trailing content after objective");
  return IlpInstance(m, n, std::move(a), rhs.values, std::move(c));
}

std::string format_instance(const IlpInstance& inst) {
  std::ostringstream out;
  auto write_row = [&](std::span<const std::int64_t> values) {
    for (std::size_t i = 0; i < values.size(); ++i) out << (i ? " " : "") << values[i];
    out << '\n';
  };
  out << inst.rows() << ' ' << inst.cols() << '\n';
  if (inst.cols() > 0)
    for (std::size_t r = 0; r < inst.rows(); ++r) write_row(inst.matrix().subspan(r * inst.cols(), inst.cols()));
  write_row(inst.rhs());
  if (!inst.feasibility_only() && inst.cols() > 0) write_row(inst.objective());
  return out.str();
}

NormalizedInstance normalize(const IlpInstance& inst) {
  const std::size_t m = inst.rows();
  const std::size_t n = inst.cols();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  auto column_less = [&](std::size_t i, std::size_t j) {
    for (std::size_t r = 0; r < m; ++r)
      if (inst.a(r, i) != inst.a(r, j)) return inst.a(r, i) < inst.a(r, j);
    return false;
  };
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    if (column_less(i, j)) return true;
    if (column_less(j, i)) return false;
    if (inst.objective()[i] != inst.objective()[j]) return inst.objective()[i] > inst.objective()[j];
    return i < j;
  });
  std::vector<std::size_t> kept;
  for (std::size_t k = 0; k < n; ++k)
    if (k == 0 || column_less(order[k - 1], order[k])) kept.push_back(order[k]);
  std::sort(kept.begin(), kept.end());

  std::vector<std::int64_t> a(m * kept.size());
  std::vector<std::int64_t> c(kept.size());
  for (std::size_t k = 0; k < kept.size(); ++k) {
    for (std::size_t r = 0; r < m; ++r) a[r * kept.size() + k] = inst.a(r, kept[k]);
    c[k] = inst.objective()[kept[k]];
  }
  std::vector<std::int64_t> b(inst.rhs().begin(), inst.rhs().end());
  IlpInstance inner(m, kept.size(), std::move(a), std::move(b),
                    inst.feasibility_only() ? std::nullopt : std::optional<std::vector<std::int64_t>>(std::move(c)));
  return {std::move(inner), std::move(kept), n};
}

std::vector<Wide> lift(const NormalizedInstance& norm, std::span<const Wide> x) {
  std::vector<Wide> out(norm.original_cols, 0);
  for (std::size_t k = 0; k < x.size(); ++k) out[norm.origin_map[k]] = x[k];
  return out;
}

std::int64_t max_abs_entry(const IlpInstance& inst) {
  std::int64_t best = 0;
  for (auto v : inst.matrix()) best = std::max<std::int64_t>(best, v < 0 ? -v : v);
  return best;
}

std::int64_t rhs_inf_norm(const IlpInstance& inst) {
  std::int64_t best = 0;
  for (auto v : inst.rhs()) best = std::max<std::int64_t>(best, v < 0 ? -v : v);
  return best;
}

std::vector<Wide> apply_matrix(const IlpInstance& inst, std::span<const Wide> x) {
  if (x.size() != inst.cols()) throw std::invalid_argument("vector length does not match n");
  std::vector<Wide> out(inst.rows(), 0);
  for (std::size_t r = 0; r < inst.rows(); ++r)
    for (std::size_t j = 0; j < inst.cols(); ++j)
      out[r] = checked_add(out[r], checked_mul(inst.a(r, j), x[j]));
  return out;
}

Wide objective_value(const IlpInstance& inst, std::span<const Wide> x) {
  Wide total = 0;
  for (std::size_t j = 0; j < inst.cols(); ++j) total = checked_add(total, checked_mul(inst.objective()[j], x[j]));
  return total;
}

bool satisfies(const IlpInstance& inst, std::span<const Wide> x) {
  if (x.size() != inst.cols()) return false;
  for (auto v : x)
    if (v < 0) return false;
  const auto ax = apply_matrix(inst, x);
  for (std::size_t r = 0; r < inst.rows(); ++r)
    if (ax[r] != inst.rhs()[r]) return false;
  return true;
}

}  // namespace ilpdp
