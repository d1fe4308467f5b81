#include "absint/domains/dbm.hpp"

#include "absint/domains/dbm_kernels.hpp"

namespace absint::domains {

Dbm::Dbm(std::size_t dim) : dim_(dim), m_(dim * dim, Bound::plus_infinity()) {
  for (std::size_t i = 0; i < dim; ++i) m_[i * dim + i] = 0;
}

Dbm Dbm::bottom(std::size_t dim) {
  Dbm d(dim);
  d.bottom_ = true;
  return d;
}

void Dbm::add_constraint(std::size_t i, std::size_t j, const Bound& c) {
  Bound& cur = m_[i * dim_ + j];
  if (c < cur) {
    cur = c;
    closed_ = false;
  }
}

void Dbm::set(std::size_t i, std::size_t j, const Bound& c) {
  m_[i * dim_ + j] = c;
  closed_ = false;
}

Dbm Dbm::close() const {
  if (bottom_ || closed_) return *this;
  Dbm r = *this;
  if (!dbm_kernels::close(r.m_, dim_)) return bottom(dim_);
  r.closed_ = true;
  return r;
}

Dbm Dbm::join(const Dbm& o) const {
  if (bottom_) return o;
  if (o.bottom_) return *this;
  Dbm a = close(), b = o.close();
  if (a.bottom_) return b;
  if (b.bottom_) return a;
  for (std::size_t k = 0; k < a.m_.size(); ++k) a.m_[k] = max(a.m_[k], b.m_[k]);
  return a;
}

Dbm Dbm::meet(const Dbm& o) const {
  if (bottom_ || o.bottom_) return bottom(dim_);
  Dbm r = *this;
  for (std::size_t k = 0; k < r.m_.size(); ++k) r.m_[k] = min(r.m_[k], o.m_[k]);
  r.closed_ = false;
  return r.close();
}

Dbm Dbm::widen(const Dbm& o) const {
  if (bottom_) return o;
  if (o.bottom_) return *this;
  Dbm r = *this;
  for (std::size_t k = 0; k < r.m_.size(); ++k)
    if (!(o.m_[k] <= m_[k])) r.m_[k] = Bound::plus_infinity();
  r.closed_ = false;
  return r;
}

bool Dbm::leq(const Dbm& o) const {
  Dbm a = close();
  if (a.bottom_) return true;
  if (o.bottom_) return false;
  for (std::size_t k = 0; k < a.m_.size(); ++k)
    if (o.m_[k] < a.m_[k]) return false;
  return true;
}

Dbm Dbm::add_dimension() const {
  Dbm r(dim_ + 1);
  r.bottom_ = bottom_;
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) r.m_[i * r.dim_ + j] = at(i, j);
  r.closed_ = closed_;
  return r;
}

Dbm Dbm::remove_dimension(std::size_t k) const {
  Dbm c = close();
  Dbm r(dim_ - 1);
  r.bottom_ = c.bottom_;
  for (std::size_t i = 0, ri = 0; i < dim_; ++i) {
    if (i == k) continue;
    for (std::size_t j = 0, rj = 0; j < dim_; ++j) {
      if (j == k) continue;
      r.m_[ri * r.dim_ + rj] = c.at(i, j);
      ++rj;
    }
    ++ri;
  }
  return r;
}

Dbm Dbm::forget(std::size_t k) const {
  Dbm r = close();
  if (r.bottom_) return r;
  for (std::size_t j = 0; j < dim_; ++j) {
    if (j == k) continue;
    r.m_[k * dim_ + j] = Bound::plus_infinity();
    r.m_[j * dim_ + k] = Bound::plus_infinity();
  }
  return r;
}

}  // namespace absint::domains
