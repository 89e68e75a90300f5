#include "zpart/reduction.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "zpart/counting.hpp"
#include "zpart/errors.hpp"

namespace zpart {

int CnfFormula::free_variables() const {
  std::vector<bool> seen(static_cast<std::size_t>(num_vars) + 1, false);
  for (const auto& c : clauses) {
    for (int lit : c) seen[static_cast<std::size_t>(std::abs(lit))] = true;
  }
  return static_cast<int>(std::count(seen.begin() + 1, seen.end(), false));
}

namespace {

bool parse_int(const std::string& token, long& out) {
  if (token.empty()) return false;
  char* end = nullptr;
  out = std::strtol(token.c_str(), &end, 10);
  return end == token.c_str() + token.size();
}

}  // namespace

CnfFormula parse_dimacs(std::string_view text) {
  CnfFormula f;
  bool have_header = false;
  long declared_clauses = 0;
  std::set<int> current;
  std::size_t clause_line = 0;
  std::size_t line_no = 0;

  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos) continue;
    if (line[first] == 'c') continue;
    if (line[first] == '%') break;  // SATLIB trailer
    std::istringstream tokens(line.substr(first));
    if (line[first] == 'p') {
      if (have_header) throw ParseError(line_no, "duplicate problem line");
      std::string p, fmt, vars, count, extra;
      tokens >> p >> fmt >> vars >> count;
      long v = 0, k = 0;
      if (p != "p" || fmt != "cnf" || !parse_int(vars, v) || !parse_int(count, k) || (tokens >> extra) || v < 0 ||
          k < 0) {
        throw ParseError(line_no, "malformed header, expected 'p cnf <variables> <clauses>'");
      }
      f.num_vars = static_cast<int>(v);
      declared_clauses = k;
      have_header = true;
      continue;
    }
    if (!have_header) throw ParseError(line_no, "clause before 'p cnf' header");
    std::string token;
    while (tokens >> token) {
      long lit = 0;
      if (!parse_int(token, lit)) throw ParseError(line_no, "invalid literal '" + token + "'");
      if (lit == 0) {
        if (current.empty()) throw ParseError(line_no, "empty clause");
        for (int l : current) {
          if (current.count(-l)) {
            throw ParseError(clause_line, "tautological clause contains " + std::to_string(std::abs(l)) +
                                              " and its negation");
          }
        }
        if (current.size() > 3) {
          throw ParseError(clause_line, "clause has " + std::to_string(current.size()) +
                                            " literals; only clauses of at most 3 literals are supported");
        }
        f.clauses.emplace_back(current.begin(), current.end());
        current.clear();
        continue;
      }
      if (lit < -f.num_vars || lit > f.num_vars) {
        throw ParseError(line_no, "literal " + token + " out of range for " + std::to_string(f.num_vars) + " variables");
      }
      if (current.empty()) clause_line = line_no;
      current.insert(static_cast<int>(lit));
    }
  }
  if (!have_header) throw ParseError(line_no, "missing 'p cnf' header");
  if (!current.empty()) throw ParseError(clause_line, "clause not terminated by 0");
  if (static_cast<long>(f.clauses.size()) != declared_clauses) {
    throw ParseError(line_no, "header declares " + std::to_string(declared_clauses) + " clauses but " +
                                  std::to_string(f.clauses.size()) + " were read");
  }
  return f;
}

CnfFormula load_dimacs(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open CNF file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_dimacs(buf.str());
}

std::string to_dimacs(const CnfFormula& f) {
  std::ostringstream out;
  out << "p cnf " << f.num_vars << ' ' << f.clauses.size() << '\n';
  for (const auto& c : f.clauses) {
    for (int lit : c) out << lit << ' ';
    out << "0\n";
  }
  return out.str();
}

const char* to_string(ReductionVariant v) {
  return v == ReductionVariant::Parsimonious ? "parsimonious" : "paper";
}

ReductionVariant parse_variant(std::string_view name) {
  if (name == "parsimonious") return ReductionVariant::Parsimonious;
  if (name == "paper") return ReductionVariant::Paper;
  throw DomainError("unknown reduction variant '" + std::string(name) + "'");
}

mpz_class value_from_digits(const std::vector<std::uint8_t>& digits, unsigned radix) {
  mpz_class v;
  for (auto it = digits.rbegin(); it != digits.rend(); ++it) {
    v *= radix;
    v += static_cast<unsigned long>(*it);
  }
  return v;
}

SubsetSumInstance SubsetSumInstance::in_radix(unsigned new_radix) const {
  if (new_radix < 6) throw DomainError("radix " + std::to_string(new_radix) + " is below 6");
  SubsetSumInstance out = *this;
  out.radix = new_radix;
  for (std::size_t k = 0; k < digit_vectors.size(); ++k) out.numbers[k] = value_from_digits(digit_vectors[k], new_radix);
  out.target = value_from_digits(target_digits, new_radix);
  return out;
}

SubsetSumInstance sat_to_subset_sum(const CnfFormula& f, unsigned radix, ReductionVariant variant) {
  if (radix < 6) throw DomainError("radix " + std::to_string(radix) + " is below 6; digits could carry");
  const std::size_t l = static_cast<std::size_t>(f.num_vars);
  const std::size_t k = f.clauses.size();
  if (l + k == 0) throw DomainError("formula has no variables and no clauses");
  const std::size_t width = l + k;
  auto clause_pos = [k](std::size_t m) { return k - m; };       // m is 1-based
  auto var_pos = [k, l](std::size_t i) { return k + l - i; };  // i is 1-based

  SubsetSumInstance ss;
  ss.radix = radix;
  ss.variant = variant;
  ss.target_digits.assign(width, 0);
  const std::uint8_t clause_target = variant == ReductionVariant::Parsimonious ? 4 : 3;
  const std::uint8_t second_slack = variant == ReductionVariant::Parsimonious ? 2 : 1;
  for (std::size_t i = 1; i <= l; ++i) ss.target_digits[var_pos(i)] = 1;
  for (std::size_t m = 1; m <= k; ++m) ss.target_digits[clause_pos(m)] = clause_target;

  for (std::size_t i = 1; i <= l; ++i) {
    std::vector<std::uint8_t> y(width, 0), z(width, 0);
    y[var_pos(i)] = 1;
    z[var_pos(i)] = 1;
    for (std::size_t m = 1; m <= k; ++m) {
      for (int lit : f.clauses[m - 1]) {
        if (static_cast<std::size_t>(std::abs(lit)) != i) continue;
        (lit > 0 ? y : z)[clause_pos(m)] = 1;
      }
    }
    ss.digit_vectors.push_back(std::move(y));
    ss.labels.push_back("y" + std::to_string(i));
    ss.digit_vectors.push_back(std::move(z));
    ss.labels.push_back("z" + std::to_string(i));
  }
  for (std::size_t m = 1; m <= k; ++m) {
    std::vector<std::uint8_t> g(width, 0), h(width, 0);
    g[clause_pos(m)] = 1;
    h[clause_pos(m)] = second_slack;
    ss.digit_vectors.push_back(std::move(g));
    ss.labels.push_back("g" + std::to_string(m));
    ss.digit_vectors.push_back(std::move(h));
    ss.labels.push_back("h" + std::to_string(m));
  }
  for (const auto& d : ss.digit_vectors) ss.numbers.push_back(value_from_digits(d, radix));
  ss.target = value_from_digits(ss.target_digits, radix);
  return ss;
}

DigitProfile digit_profile(const SubsetSumInstance& ss) {
  DigitProfile out;
  const std::size_t width = ss.target_digits.size();
  out.column_sums.assign(width, 0);
  for (const auto& d : ss.digit_vectors) {
    for (std::size_t c = 0; c < width; ++c) {
      out.max_digit = std::max<unsigned>(out.max_digit, d[c]);
      out.column_sums[c] += d[c];
    }
  }
  out.carry_free_on_target = true;
  for (std::size_t c = 0; c < width; ++c) {
    if (ss.target_digits[c] >= ss.radix || out.column_sums[c] >= ss.target_digits[c] + ss.radix) {
      out.carry_free_on_target = false;
    }
  }
  return out;
}

PartitionReduction subset_sum_to_partition(const std::vector<mpz_class>& numbers, const mpz_class& target) {
  mpz_class s;
  for (const auto& x : numbers) s += x;
  if (sgn(target) <= 0 || target > s) {
    throw DomainError("subset-sum target " + target.get_str() + " must satisfy 0 < t <= s = " + s.get_str());
  }
  std::vector<mpz_class> out = numbers;
  out.push_back(2 * s - target);
  out.push_back(s + target);
  return PartitionReduction{PartitionInstance(std::move(out)), 2};
}

PartitionReduction subset_sum_to_partition(const SubsetSumInstance& ss) {
  return subset_sum_to_partition(ss.numbers, ss.target);
}

std::vector<FamilyMember> multi_radix_family(const CnfFormula& f, const std::vector<unsigned>& radices,
                                             ReductionVariant variant) {
  if (radices.empty()) throw DomainError("radix list is empty");
  for (unsigned b : radices) {
    if (b < 6) throw DomainError("radix " + std::to_string(b) + " is below 6");
  }
  const SubsetSumInstance base = sat_to_subset_sum(f, radices.front(), variant);
  std::vector<FamilyMember> family;
  for (unsigned b : radices) {
    SubsetSumInstance ss = base.in_radix(b);
    PartitionReduction pr = subset_sum_to_partition(ss);
    family.push_back(FamilyMember{b, std::move(ss), std::move(pr.instance)});
  }
  return family;
}

PipelineCount count_sat_via_pipeline(const CnfFormula& f, unsigned radix, ReductionVariant variant,
                                     const Limits& limits) {
  const SubsetSumInstance ss = sat_to_subset_sum(f, radix, variant);
  const PartitionReduction pr = subset_sum_to_partition(ss);
  PipelineCount out;
  out.variant = variant;
  out.zero_partitions = count_zero_exact(pr.instance, limits);
  out.subsets = out.zero_partitions / pr.zero_partitions_per_subset;
  out.sat_count = out.subsets;
  out.multiplicity = variant == ReductionVariant::Parsimonious
                         ? "one subset per satisfying assignment"
                         : "each satisfying assignment counted 2^(clauses with exactly two true literals) times";
  return out;
}

}  // namespace zpart
