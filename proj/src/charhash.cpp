#include "ngramhash/charhash.hpp"

#include <istream>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>

namespace ngram {

namespace {

void check_width(int width) {
  if (width < 1 || width > kMaxWidth) {
    throw std::invalid_argument("table width must be in [1, " + std::to_string(kMaxWidth) + "], got " +
                                std::to_string(width));
  }
}

}  // namespace

CharHashTable CharHashTable::random(int width, std::size_t alphabet_size, std::uint64_t seed) {
  check_width(width);
  if (alphabet_size == 0) throw std::invalid_argument("alphabet must be non-empty");
  std::mt19937_64 gen(seed);
  std::vector<Word> values(alphabet_size);
  for (auto& v : values) v = gen() >> (64 - width);
  return CharHashTable{std::move(values), width, seed};
}

CharHashTable CharHashTable::from_values(std::vector<Word> values, int width) {
  check_width(width);
  if (values.empty()) throw std::invalid_argument("alphabet must be non-empty");
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] > low_mask(width)) {
      throw std::invalid_argument("table entry " + std::to_string(i) + " = " + std::to_string(values[i]) +
                                  " does not fit in " + std::to_string(width) + " bits");
    }
  }
  return CharHashTable{std::move(values), width, 0};
}

Word CharHashTable::lookup(Symbol c) const {
  if (c >= values_.size()) {
    throw std::out_of_range("symbol " + std::to_string(c) + " outside alphabet of size " +
                            std::to_string(values_.size()));
  }
  return values_[c];
}

void CharHashTable::save(std::ostream& out) const {
  out << width_ << ' ' << values_.size() << ' ' << seed_ << '\n';
  out << std::hex;
  for (Word v : values_) out << v << '\n';
  out << std::dec;
}

CharHashTable CharHashTable::load(std::istream& in) {
  std::string header;
  if (!std::getline(in, header)) throw std::runtime_error("table file: missing header");
  std::istringstream hs(header);
  int width = 0;
  std::size_t alphabet = 0;
  std::uint64_t seed = 0;
  if (!(hs >> width >> alphabet >> seed)) {
    throw std::runtime_error("table file: header must be 'L alphabet_size seed'");
  }
  check_width(width);
  std::vector<Word> values;
  values.reserve(alphabet);
  std::string line;
  while (values.size() < alphabet && std::getline(in, line)) {
    if (line.empty()) continue;
    std::size_t pos = 0;
    Word v = std::stoull(line, &pos, 16);
    values.push_back(v);
  }
  if (values.size() != alphabet) {
    throw std::runtime_error("table file: expected " + std::to_string(alphabet) + " entries, got " +
                             std::to_string(values.size()));
  }
  auto table = from_values(std::move(values), width);
  table.seed_ = seed;
  return table;
}

std::vector<CharHashTable> random_tables(int width, std::size_t alphabet_size, std::uint64_t seed,
                                         std::size_t count) {
  std::vector<CharHashTable> tables;
  tables.reserve(count);
  for (std::size_t i = 0; i < count; ++i) tables.push_back(CharHashTable::random(width, alphabet_size, seed + i));
  return tables;
}

}  // namespace ngram
