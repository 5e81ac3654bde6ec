#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ngramhash/charhash.hpp"
#include "ngramhash/config.hpp"
#include "ngramhash/rolling.hpp"

namespace ngram {

/// Whole file as bytes; "-" reads standard input. Throws std::runtime_error
/// if the file cannot be read.
std::vector<unsigned char> read_input(const std::string& path);

/// Tables saved back to back with CharHashTable::save; reads until EOF.
std::vector<CharHashTable> load_tables(const std::string& path);

/// Byte-alphabet hasher: tables from `table_path` when given, else drawn
/// from cfg.seed.
NgramHasher make_byte_hasher(const HasherConfig& cfg, const std::optional<std::string>& table_path);

/// One lowercase hex value per complete n-gram, one per line.
void write_hashes(NgramHasher& hasher, std::span<const unsigned char> input, std::ostream& out);

}  // namespace ngram
