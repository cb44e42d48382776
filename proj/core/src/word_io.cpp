#include "saislab/word_io.hpp"

#include <cstdint>
#include <fstream>
#include <limits>
#include <sstream>

#include "saislab/error.hpp"

namespace saislab {

namespace {

std::uint64_t read_u64_le(std::istream& in) {
  unsigned char buf[8];
  in.read(reinterpret_cast<char*>(buf), 8);
  if (!in) throw Error(Errc::malformed_input, "truncated binary word file (count)");
  std::uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | buf[i];
  return v;
}

void write_u64_le(std::ostream& out, std::uint64_t v) {
  unsigned char buf[8];
  for (int i = 0; i < 8; ++i) buf[i] = static_cast<unsigned char>((v >> (8 * i)) & 0xff);
  out.write(reinterpret_cast<const char*>(buf), 8);
}

std::uint32_t read_u32_le(std::istream& in) {
  unsigned char buf[4];
  in.read(reinterpret_cast<char*>(buf), 4);
  if (!in) throw Error(Errc::malformed_input, "truncated binary word file (letter)");
  std::uint32_t v = 0;
  for (int i = 3; i >= 0; --i) v = (v << 8) | buf[i];
  return v;
}

void write_u32_le(std::ostream& out, std::uint32_t v) {
  unsigned char buf[4];
  for (int i = 0; i < 4; ++i) buf[i] = static_cast<unsigned char>((v >> (8 * i)) & 0xff);
  out.write(reinterpret_cast<const char*>(buf), 4);
}

}  // namespace

std::vector<Word> read_words_text(std::istream& in) {
  std::vector<Word> words;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::vector<Letter> letters;
    long long v;
    while (ls >> v) {
      if (v < 0) throw Error(Errc::malformed_input, "negative letter id in word file");
      letters.push_back(static_cast<Letter>(v));
    }
    if (!ls.eof()) throw Error(Errc::malformed_input, "non-numeric token in word file");
    words.push_back(make_word(std::move(letters)));
  }
  return words;
}

void write_words_text(std::ostream& out, const std::vector<Word>& words) {
  for (const Word& w : words) {
    for (Index i = 0; i < w.size(); ++i) {
      if (i) out << ' ';
      out << w.letters[static_cast<std::size_t>(i)];
    }
    out << '\n';
  }
}

std::vector<Word> read_words_binary(std::istream& in) {
  std::vector<Word> words;
  while (in.peek() != std::char_traits<char>::eof()) {
    const std::uint64_t count = read_u64_le(in);
    if (count >= static_cast<std::uint64_t>(kMaxWordLength)) {
      throw Error(Errc::malformed_input, "binary word length exceeds the 2^40 ingestion limit");
    }
    std::vector<Letter> letters(count);
    for (std::uint64_t i = 0; i < count; ++i) letters[i] = static_cast<Letter>(read_u32_le(in));
    words.push_back(make_word(std::move(letters)));
  }
  return words;
}

void write_words_binary(std::ostream& out, const std::vector<Word>& words) {
  for (const Word& w : words) {
    write_u64_le(out, static_cast<std::uint64_t>(w.size()));
    for (Letter a : w.letters) {
      if (a > std::numeric_limits<std::uint32_t>::max()) {
        throw Error(Errc::validation, "letter does not fit the 32-bit binary format");
      }
      write_u32_le(out, static_cast<std::uint32_t>(a));
    }
  }
}

std::vector<Word> load_words_file(const std::string& path, bool binary) {
  std::ifstream in(path, binary ? std::ios::binary : std::ios::in);
  if (!in) throw Error(Errc::malformed_input, "cannot open word file: " + path);
  return binary ? read_words_binary(in) : read_words_text(in);
}

}  // namespace saislab
