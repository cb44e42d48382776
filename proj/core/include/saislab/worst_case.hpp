#pragma once

#include <array>
#include <string>
#include <vector>

#include "saislab/word.hpp"

namespace saislab {

/// A monoid morphism given by its images on the letters 0..4.
struct MorphismTable {
  std::array<std::vector<Letter>, 5> image;
};

const MorphismTable& phi_table();   // 0->02, 1->04, 2->12, 3->13, 4->14
const MorphismTable& psi_table();   // identity on {0,1,2,4}, 3->4
const MorphismTable& psi2_table();  // 0->0001, 1->001, 2->01, 3->011, 4->011
const MorphismTable& psi3_table();  // 0->001, 1->01, 2->012, 3->02, 4->02

/// Applies a morphism letterwise. Every input letter must be in 0..4.
std::vector<Letter> apply_morphism(const MorphismTable& m, const std::vector<Letter>& in);

/// phi^n(3); length 2^n. Rejects n > 30.
Word phi_power(int n);

/// Balanced words over {0..4}: even length, rightmost letter 3, the suffix
/// from position 1 contains all five letters, and every letter but the last
/// lies in {0,1} at even positions and {2,4} at odd ones.
bool is_balanced(const Word& w);

enum class Family { thm1, cor2, cor3 };

const char* family_name(Family f);
Family family_from_name(const std::string& name);

struct FamilySpec {
  Family family = Family::thm1;
  int n = 3;
};

/// The adversarial word of a family: thm1 applies psi to phi^n(3) minus its
/// first letter and dense-ranks the result; cor2/cor3 prepend the letter 1
/// to the psi2/psi3 image of the same suffix. Rejects n < 3 and n > 26.
Word worst_case_word(const FamilySpec& spec);

struct LevelCheck {
  Index k = 0;
  Index measured_plus1 = 0;
  Index claimed_plus1 = 0;  // closed form evaluated with the measured length
  bool match = false;
};

/// Measured-versus-claimed report. Claimed lengths are compared, never
/// assumed: a misprinted closed form surfaces as a flagged mismatch.
struct FamilyReport {
  Family family = Family::thm1;
  int n = 0;
  Index measured_length = 0;
  Index paper_length_claim = 0;
  bool length_matches_paper = false;
  Index alt_length_claim = 0;  // cor3 carries a second candidate closed form
  bool length_matches_alt = false;
  Index measured_depth = 0;
  Index paper_depth_claim = 0;
  bool depth_matches = false;
  std::vector<LevelCheck> levels;
  bool halving_exact = false;  // every LevelCheck in the claimed k-range matches
  int phi_suffix_power = 0;
  bool level1_is_phi_suffix = false;  // observed: is(w) == phi^m(3) minus first letter
  bool ok = false;
};

FamilyReport verify_family(const FamilySpec& spec);

}  // namespace saislab
