#include "nilca/geometry.hpp"

#include <algorithm>
#include <charconv>
#include <iterator>
#include <cstdlib>

#include "nilca/error.hpp"

namespace nilca {

namespace {

void require_same_dimension(const CellVector& a, const CellVector& b) {
  if (a.dimension() != b.dimension()) {
    throw Error(ErrorKind::DimensionMismatch,
                "vectors " + a.to_string() + " and " + b.to_string() +
                    " differ in dimension");
  }
}

}  // namespace

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "invalid-argument";
    case ErrorKind::DimensionMismatch: return "dimension-mismatch";
    case ErrorKind::Disjointness: return "disjointness";
    case ErrorKind::PeriodTooSmall: return "period-too-small";
    case ErrorKind::BackgroundInstability: return "background-instability";
    case ErrorKind::GuardExceeded: return "guard-exceeded";
    case ErrorKind::Parse: return "parse";
    case ErrorKind::FileNotFound: return "file-not-found";
    case ErrorKind::UnknownName: return "unknown-name";
    case ErrorKind::Unsupported: return "unsupported";
  }
  return "unknown";
}

CellVector CellVector::unit(int dim, int axis, Coord length) {
  CellVector v = zero(dim);
  v.coords_.at(axis) = length;
  return v;
}

CellVector CellVector::operator+(const CellVector& o) const {
  require_same_dimension(*this, o);
  CellVector r = *this;
  for (std::size_t i = 0; i < coords_.size(); ++i) r.coords_[i] += o.coords_[i];
  return r;
}

CellVector CellVector::operator-(const CellVector& o) const {
  require_same_dimension(*this, o);
  CellVector r = *this;
  for (std::size_t i = 0; i < coords_.size(); ++i) r.coords_[i] -= o.coords_[i];
  return r;
}

CellVector CellVector::operator-() const {
  CellVector r = *this;
  for (auto& c : r.coords_) c = -c;
  return r;
}

CellVector& CellVector::operator+=(const CellVector& o) {
  require_same_dimension(*this, o);
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += o.coords_[i];
  return *this;
}

CellVector CellVector::without_axis(int axis) const {
  std::vector<Coord> out;
  out.reserve(coords_.size() - 1);
  for (int i = 0; i < dimension(); ++i) {
    if (i != axis) out.push_back(coords_[i]);
  }
  return CellVector(std::move(out));
}

CellVector CellVector::with_axis(int axis, Coord value) const {
  std::vector<Coord> out = coords_;
  out.insert(out.begin() + axis, value);
  return CellVector(std::move(out));
}

std::string CellVector::to_string() const {
  std::string s = "(";
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(coords_[i]);
  }
  s += ')';
  return s;
}

CellVector parse_vector(std::string_view text) {
  auto fail = [&] {
    throw Error(ErrorKind::InvalidArgument,
                "malformed vector '" + std::string(text) + "'");
  };
  auto skip_ws = [&](std::size_t& i) {
    while (i < text.size() && (text[i] == ' ' || text[i] == '\t')) ++i;
  };
  std::size_t i = 0;
  skip_ws(i);
  if (i >= text.size() || text[i] != '(') fail();
  ++i;
  std::vector<Coord> coords;
  while (true) {
    skip_ws(i);
    if (i < text.size() && text[i] == '+') ++i;
    Coord value = 0;
    auto [ptr, ec] = std::from_chars(text.data() + i, text.data() + text.size(), value);
    if (ec != std::errc()) fail();
    coords.push_back(value);
    i = static_cast<std::size_t>(ptr - text.data());
    skip_ws(i);
    if (i >= text.size()) fail();
    if (text[i] == ',') {
      ++i;
      skip_ws(i);
      // "(7,)" is the one-dimensional vector (7).
      if (i < text.size() && text[i] == ')' && coords.size() == 1) {
        ++i;
        break;
      }
      continue;
    }
    if (text[i] == ')') {
      ++i;
      break;
    }
    fail();
  }
  skip_ws(i);
  if (i != text.size()) fail();
  return CellVector(std::move(coords));
}

std::size_t CellVectorHash::operator()(const CellVector& v) const noexcept {
  std::size_t h = 0x9e3779b97f4a7c15ULL;
  for (Coord c : v.coords()) {
    h ^= static_cast<std::size_t>(c) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

Coord norm(const CellVector& v) {
  Coord m = 0;
  for (Coord c : v.coords()) m = std::max(m, c < 0 ? -c : c);
  return m;
}

Coord floor_mod(Coord a, Coord m) {
  Coord r = a % m;
  return r < 0 ? r + m : r;
}

CellSet::CellSet(std::vector<CellVector> cells) : cells_(std::move(cells)) {
  for (const auto& c : cells_) {
    if (c.dimension() != cells_.front().dimension()) {
      throw Error(ErrorKind::DimensionMismatch, "cell set mixes dimensions");
    }
  }
  std::sort(cells_.begin(), cells_.end());
  cells_.erase(std::unique(cells_.begin(), cells_.end()), cells_.end());
}

bool CellSet::contains(const CellVector& v) const {
  return std::binary_search(cells_.begin(), cells_.end(), v);
}

CellSet CellSet::united(const CellSet& other) const {
  std::vector<CellVector> out;
  out.reserve(cells_.size() + other.cells_.size());
  std::set_union(cells_.begin(), cells_.end(), other.cells_.begin(),
                 other.cells_.end(), std::back_inserter(out));
  return CellSet(std::move(out));
}

bool CellSet::is_subset_of(const CellSet& other) const {
  return std::includes(other.cells_.begin(), other.cells_.end(), cells_.begin(),
                       cells_.end());
}

std::vector<CellVector> cube(const CellVector& center, Coord k) {
  Box box(center, k);
  std::vector<CellVector> out;
  out.reserve(box.size());
  for (std::size_t i = 0; i < box.size(); ++i) out.push_back(box.cell_at(i));
  return out;
}

CellSet ball_enumerate(Coord k, const CellSet& base) {
  if (base.empty()) {
    throw Error(ErrorKind::InvalidArgument, "ball around an empty vector set");
  }
  if (k < 0) throw Error(ErrorKind::InvalidArgument, "negative ball radius");
  std::vector<CellVector> out;
  for (const auto& v : base) {
    auto c = cube(v, k);
    out.insert(out.end(), c.begin(), c.end());
  }
  return CellSet(std::move(out));
}

bool tower_contains(const TowerDescriptor& tower, const CellVector& u) {
  for (const auto& v : tower.base) {
    require_same_dimension(u, v);
    bool inside = true;
    for (int i = 0; i < u.dimension() && inside; ++i) {
      if (i == tower.axis) continue;
      inside = std::llabs(u[i] - v[i]) <= tower.width;
    }
    if (inside) return true;
  }
  return false;
}

Box::Box(CellVector center, Coord radius)
    : center_(std::move(center)), radius_(radius), size_(1) {
  if (radius_ < 0) throw Error(ErrorKind::InvalidArgument, "negative box radius");
  for (int i = 0; i < center_.dimension(); ++i) size_ *= static_cast<std::size_t>(side());
}

bool Box::contains(const CellVector& v) const {
  for (int i = 0; i < dimension(); ++i) {
    if (std::llabs(v[i] - center_[i]) > radius_) return false;
  }
  return true;
}

std::size_t Box::index_of(const CellVector& v) const {
  std::size_t idx = 0;
  const auto s = static_cast<std::size_t>(side());
  for (int i = 0; i < dimension(); ++i) {
    idx = idx * s + static_cast<std::size_t>(v[i] - center_[i] + radius_);
  }
  return idx;
}

CellVector Box::cell_at(std::size_t index) const {
  std::vector<Coord> coords(dimension());
  const auto s = static_cast<std::size_t>(side());
  for (int i = dimension() - 1; i >= 0; --i) {
    coords[i] = center_[i] - radius_ + static_cast<Coord>(index % s);
    index /= s;
  }
  return CellVector(std::move(coords));
}

}  // namespace nilca
