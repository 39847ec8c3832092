#pragma once

// Matrix model of the state semiring R^st_I: rd_i is the diagonal unit E_ii
// and wr_i the matrix whose column i is all ones. Under this map
//   wr_i rd_i = wr_i,  wr_i wr_j = wr_j,  wr_i rd_j = 0 (i != j),
//   sum_i rd_i wr_i = 1
// all hold, and rd_i wr_j = E_ij, so the image is the full matrix semiring.

#include <string>
#include <vector>

#include "semfx/error.hpp"
#include "semfx/matrix.hpp"
#include "semfx/semiring.hpp"
#include "semfx/words.hpp"

namespace semfx {

inline NatMatrix read_matrix(const std::vector<std::string>& index, std::size_t i) {
  return NatMatrix::unit(index.size(), i, i);
}

inline NatMatrix write_matrix(const std::vector<std::string>& index, std::size_t i) {
  NatMatrix m(index.size());
  for (std::size_t k = 0; k < index.size(); ++k) m.at(k, i) = Natural::one();
  return m;
}

inline NatMatrix letter_matrix(const std::vector<std::string>& index, const Letter& l) {
  auto it = std::find(index.begin(), index.end(), l.index);
  if (it == index.end()) throw Error(ErrorCode::UnknownIndex, "state value '" + l.index + "' is not declared");
  const auto i = static_cast<std::size_t>(it - index.begin());
  switch (l.kind) {
    case LetterKind::Read: return read_matrix(index, i);
    case LetterKind::Write: return write_matrix(index, i);
    default: throw Error(ErrorCode::InvalidValue, "state words use rd_/wr_ letters only, got " + to_text(l));
  }
}

/// Image of a word over {rd_i, wr_i}; earliest action leftmost.
inline NatMatrix state_to_matrix(const Word& w, const std::vector<std::string>& index) {
  NatMatrix m = NatMatrix::identity(index.size());
  for (const auto& l : w) m = m * letter_matrix(index, l);
  return m;
}

/// A formal sum of state words, e.g. sum_i rd_i wr_i.
inline NatMatrix state_to_matrix(const WordMultiset& sum, const std::vector<std::string>& index) {
  NatMatrix m = NatMatrix::zero(index.size());
  for (const auto& [w, mult] : sum.entries()) m = m + state_to_matrix(w, index).scaled(mult);
  return m;
}

inline SemiringValue state_value(const Word& w, const std::vector<std::string>& index) {
  return make_value(tags::state(index), Payload(state_to_matrix(w, index)));
}

/// rd_i or wr_i in a matrix-shaped semiring with any coefficient ring.
inline SemiringValue state_letter(const SemiringTag& tag, const Letter& l) {
  if (tag.shape != Shape::Matrix) throw Error(ErrorCode::TagMismatch, tag_name(tag) + " has no state letters");
  return embed(state_value(Word{l}, tag.index), tag);
}

}  // namespace semfx
