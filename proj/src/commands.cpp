#include "ngramhash/commands.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <stdexcept>

namespace ngram {

std::vector<unsigned char> read_input(const std::string& path) {
  if (path == "-") {
    return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::vector<unsigned char> data{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  if (in.bad()) throw std::runtime_error("error reading " + path);
  return data;
}

std::vector<CharHashTable> load_tables(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::vector<CharHashTable> tables;
  while (true) {
    in >> std::ws;
    if (in.peek() == std::char_traits<char>::eof()) break;
    tables.push_back(CharHashTable::load(in));
  }
  if (tables.empty()) throw std::runtime_error(path + " holds no tables");
  return tables;
}

NgramHasher make_byte_hasher(const HasherConfig& cfg, const std::optional<std::string>& table_path) {
  if (!table_path) return NgramHasher(cfg, kByteAlphabet);
  auto tables = load_tables(*table_path);
  for (const auto& t : tables) {
    if (t.alphabet_size() < kByteAlphabet) {
      throw std::invalid_argument("byte input needs tables of 256 entries; " + *table_path + " has " +
                                  std::to_string(t.alphabet_size()));
    }
  }
  return NgramHasher(cfg, std::move(tables));
}

void write_hashes(NgramHasher& hasher, std::span<const unsigned char> input, std::ostream& out) {
  std::string buf;
  char line[24];
  hasher.eat_all(input, [&](Word v) {
    const int len = std::snprintf(line, sizeof line, "%llx\n", static_cast<unsigned long long>(v));
    buf.append(line, static_cast<std::size_t>(len));
    if (buf.size() > (1u << 16)) {
      out << buf;
      buf.clear();
    }
  });
  out << buf;
}

}  // namespace ngram
