#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "saislab/word.hpp"

namespace saislab {

/// Text format: one word per line, decimal letter ids separated by single
/// spaces. An empty line is the empty word.
std::vector<Word> read_words_text(std::istream& in);
void write_words_text(std::ostream& out, const std::vector<Word>& words);

/// Binary format: a 64-bit little-endian letter count followed by that many
/// 32-bit little-endian unsigned letters. Words are stored back to back.
std::vector<Word> read_words_binary(std::istream& in);
void write_words_binary(std::ostream& out, const std::vector<Word>& words);

std::vector<Word> load_words_file(const std::string& path, bool binary);

}  // namespace saislab
