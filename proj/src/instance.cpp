#include "zpart/instance.hpp"

#include <sstream>

#include "zpart/errors.hpp"

namespace zpart {

namespace {

std::vector<mpz_class> to_mpz(std::initializer_list<unsigned long> values) {
  std::vector<mpz_class> out;
  out.reserve(values.size());
  for (unsigned long v : values) out.emplace_back(v);
  return out;
}

}  // namespace

PartitionInstance::PartitionInstance(std::vector<mpz_class> numbers)
    : numbers_(std::move(numbers)) {
  if (numbers_.empty()) throw DomainError("partition instance must have at least one element");
  for (std::size_t k = 0; k < numbers_.size(); ++k) {
    if (sgn(numbers_[k]) <= 0) {
      throw DomainError("element " + std::to_string(k) + " is " + numbers_[k].get_str() +
                        "; elements must be positive integers");
    }
    total_ += numbers_[k];
  }
  if (mpz_sizeinbase(total_.get_mpz_t(), 2) <= 63) small_total_ = mpz_get_ui(total_.get_mpz_t());
}

PartitionInstance::PartitionInstance(std::initializer_list<unsigned long> numbers)
    : PartitionInstance(to_mpz(numbers)) {}

PartitionInstance PartitionInstance::from_u64(std::span<const std::uint64_t> numbers) {
  std::vector<mpz_class> out;
  out.reserve(numbers.size());
  for (std::uint64_t v : numbers) out.emplace_back(static_cast<unsigned long>(v));
  return PartitionInstance(std::move(out));
}

std::vector<std::uint64_t> PartitionInstance::small_numbers() const {
  if (!small_total_) throw LimitError("instance total exceeds 63 bits");
  std::vector<std::uint64_t> out;
  out.reserve(numbers_.size());
  for (const auto& x : numbers_) out.push_back(mpz_get_ui(x.get_mpz_t()));
  return out;
}

PartitionInstance PartitionInstance::with_replaced(std::size_t index, const mpz_class& value) const {
  if (index >= numbers_.size()) throw DomainError("index out of range");
  auto copy = numbers_;
  copy[index] = value;
  return PartitionInstance(std::move(copy));
}

PartitionInstance PartitionInstance::with_appended(const mpz_class& value) const {
  auto copy = numbers_;
  copy.push_back(value);
  return PartitionInstance(std::move(copy));
}

PartitionInstance PartitionInstance::scaled(const mpz_class& factor) const {
  auto copy = numbers_;
  for (auto& x : copy) x *= factor;
  return PartitionInstance(std::move(copy));
}

std::string PartitionInstance::to_string() const {
  std::ostringstream out;
  out << '[';
  for (std::size_t k = 0; k < numbers_.size(); ++k) {
    if (k) out << ',';
    out << numbers_[k].get_str();
  }
  out << ']';
  return out.str();
}

mpz_class partition_size(const PartitionInstance& inst, const Partition& sigma) {
  if (sigma.signs.size() != inst.size()) throw DomainError("partition length differs from instance length");
  mpz_class size;
  for (std::size_t k = 0; k < inst.size(); ++k) {
    if (sigma.signs[k] == 1) {
      size += inst[k];
    } else if (sigma.signs[k] == -1) {
      size -= inst[k];
    } else {
      throw DomainError("partition signs must be -1 or +1");
    }
  }
  return size;
}

SizeSpectrum::SizeSpectrum(std::int64_t total, std::vector<Count> subset_counts)
    : total_(total), subset_counts_(std::move(subset_counts)) {
  if (subset_counts_.size() != static_cast<std::size_t>(total_) + 1) {
    throw DomainError("size spectrum needs total+1 subset counts");
  }
}

Count SizeSpectrum::at(std::int64_t u) const {
  if (u < -total_ || u > total_) return 0;
  const std::int64_t twice = u + total_;
  if (twice % 2 != 0) return 0;
  return subset_counts_[static_cast<std::size_t>(twice / 2)];
}

Count SizeSpectrum::mass() const {
  Count sum;
  for (const auto& c : subset_counts_) sum += c;
  return sum;
}

Count ResidueSpectrum::mass() const {
  Count sum;
  for (const auto& c : counts) sum += c;
  return sum;
}

}  // namespace zpart
