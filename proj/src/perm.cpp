#include "apd/perm.hpp"

#include <stdexcept>
#include <utility>

namespace apd {

Permutation::Permutation(Field field, std::vector<elem> images)
    : field_(std::move(field)), images_(std::move(images)) {
  const std::uint64_t q = field_.q();
  if (images_.size() != q)
    throw std::invalid_argument("image table has wrong length");
  std::vector<bool> seen(q, false);
  for (elem v : images_) {
    if (v >= q || seen[v])
      throw std::invalid_argument("image table is not a bijection");
    seen[v] = true;
  }
}

Permutation Permutation::base_f(const Field& field) {
  const std::uint64_t q = field.q();
  if (q < 2) throw std::invalid_argument("need q >= 2");
  std::vector<elem> img(q);
  img[0] = 1;
  img[1] = 0;
  for (std::uint64_t x = 2; x < q; ++x)
    img[x] = field.inv(static_cast<elem>(x));
  return Permutation(field, std::move(img));
}

Permutation Permutation::identity(const Field& field) {
  std::vector<elem> img(field.q());
  for (std::uint64_t x = 0; x < field.q(); ++x)
    img[x] = static_cast<elem>(x);
  return Permutation(field, std::move(img));
}

Permutation Permutation::swapped(elem a, elem b) const {
  if (a == b) throw std::invalid_argument("swap requires distinct points");
  std::vector<elem> img = images_;
  std::swap(img[a], img[b]);
  Permutation out(*this);
  out.images_ = std::move(img);
  return out;
}

Permutation Permutation::compose(const Permutation& sigma) const {
  if (!field_.same(sigma.field_))
    throw std::invalid_argument("field mismatch in compose");
  std::vector<elem> img(images_.size());
  for (std::size_t x = 0; x < img.size(); ++x)
    img[x] = images_[sigma.images_[x]];
  Permutation out(*this);
  out.images_ = std::move(img);
  return out;
}

Permutation Permutation::inverse() const {
  std::vector<elem> img(images_.size());
  for (std::size_t x = 0; x < img.size(); ++x)
    img[images_[x]] = static_cast<elem>(x);
  Permutation out(*this);
  out.images_ = std::move(img);
  return out;
}

bool Permutation::is_involution() const {
  for (std::size_t x = 0; x < images_.size(); ++x)
    if (images_[images_[x]] != x) return false;
  return true;
}

}  // namespace apd
