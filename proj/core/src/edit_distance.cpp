#include <array>
#include <cstdint>
#include <vector>

#include "pws/fingerprint.hpp"

namespace pws {
namespace {

using Word = std::uint64_t;

// One 64-row block of Hyyrö's bit-vector Levenshtein recurrence. `hin` is the
// horizontal delta entering the block from above; returns the delta leaving
// at row `out_bit`.
inline int advance_block(Word& pv, Word& mv, Word eq, int hin, int out_bit) {
  const Word hin_neg = hin < 0 ? 1 : 0;
  const Word xv = eq | mv;
  eq |= hin_neg;
  const Word xh = (((eq & pv) + pv) ^ pv) | eq;
  Word ph = mv | ~(xh | pv);
  Word mh = pv & xh;
  int hout = 0;
  if ((ph >> out_bit) & 1) hout = 1;
  if ((mh >> out_bit) & 1) hout = -1;
  ph <<= 1;
  mh <<= 1;
  mh |= hin_neg;
  if (hin > 0) ph |= 1;
  pv = mh | ~(xv | ph);
  mv = ph & xv;
  return hout;
}

}  // namespace

std::size_t edit_distance(std::string_view a, std::string_view b) {
  if (a.size() < b.size()) std::swap(a, b);  // b is the shorter: it becomes the pattern
  const std::size_t m = b.size();
  if (m == 0) return a.size();

  const std::size_t blocks = (m + 63) / 64;
  std::vector<std::array<Word, 256>> peq(blocks);
  for (auto& row : peq) row.fill(0);
  for (std::size_t i = 0; i < m; ++i) {
    peq[i / 64][static_cast<unsigned char>(b[i])] |= Word{1} << (i % 64);
  }
  std::vector<Word> pv(blocks, ~Word{0});
  std::vector<Word> mv(blocks, 0);
  const int last_bit = static_cast<int>((m - 1) % 64);
  std::size_t score = m;

  for (char ch : a) {
    const unsigned char c = static_cast<unsigned char>(ch);
    int carry = 1;
    for (std::size_t w = 0; w < blocks; ++w) {
      const int bit = w + 1 == blocks ? last_bit : 63;
      carry = advance_block(pv[w], mv[w], peq[w][c], carry, bit);
    }
    score = static_cast<std::size_t>(static_cast<long long>(score) + carry);
  }
  return score;
}

}  // namespace pws
