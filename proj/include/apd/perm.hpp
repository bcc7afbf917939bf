#pragma once

#include <vector>

#include "apd/field.hpp"

namespace apd {

// Permutation of F_q as a dense image table indexed by canonical encoding.
// Immutable after construction; swapped() returns a fresh table.
class Permutation {
public:
  Permutation(Field field, std::vector<elem> images);

  // f(0) = 1, f(1) = 0, f(x) = 1/x otherwise.
  static Permutation base_f(const Field& field);
  static Permutation identity(const Field& field);

  const Field& field() const { return field_; }
  const std::vector<elem>& images() const { return images_; }
  elem operator()(elem x) const { return images_[x]; }

  // pi' with pi'(a) = pi(b), pi'(b) = pi(a); requires a != b.
  Permutation swapped(elem a, elem b) const;

  Permutation compose(const Permutation& sigma) const;  // this after sigma
  Permutation inverse() const;
  bool is_involution() const;

private:
  Field field_;
  std::vector<elem> images_;
};

}  // namespace apd
