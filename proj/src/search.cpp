#include "mahlerlab/search.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

#include "mahlerlab/roots.hpp"
#include "mahlerlab/structure.hpp"

namespace mahlerlab {

SelfReciprocalStream::SelfReciprocalStream(int degree, long height, std::uint64_t cap) {
  if (degree < 2 || degree % 2 != 0) throw std::invalid_argument("enumerate_selfreciprocal: degree must be even and >= 2");
  if (height < 1) throw std::invalid_argument("enumerate_selfreciprocal: height must be >= 1");
  n_ = degree / 2;
  height_ = height;
  const std::uint64_t base = static_cast<std::uint64_t>(2 * height + 1);
  size_ = 1;
  for (int i = 0; i < n_; ++i) {
    if (size_ > cap / base) {
      throw SearchSizeError("enumerate_selfreciprocal: (2H+1)^n exceeds the cap of " + std::to_string(cap) +
                            "; raise the cap explicitly");
    }
    size_ *= base;
  }
  if (size_ > cap) throw SearchSizeError("enumerate_selfreciprocal: stream size exceeds the cap");
}

std::vector<long> SelfReciprocalStream::free_coefficients(std::uint64_t index) const {
  const std::uint64_t base = static_cast<std::uint64_t>(2 * height_ + 1);
  std::vector<long> a(static_cast<std::size_t>(n_));
  for (int j = n_ - 1; j >= 0; --j) {
    a[static_cast<std::size_t>(j)] = static_cast<long>(index % base) - height_;
    index /= base;
  }
  return a;
}

Polynomial palindrome(const std::vector<long>& half) {
  const int n = static_cast<int>(half.size()) - 1;
  std::vector<mpq_class> c(static_cast<std::size_t>(2 * n) + 1);
  for (int j = 0; j <= n; ++j) c[static_cast<std::size_t>(j)] = c[static_cast<std::size_t>(2 * n - j)] = half[static_cast<std::size_t>(j)];
  return Polynomial(std::move(c));
}

Polynomial SelfReciprocalStream::at(std::uint64_t index) const {
  std::vector<long> half{1};
  const auto free = free_coefficients(index);
  half.insert(half.end(), free.begin(), free.end());
  return palindrome(half);
}

bool SelfReciprocalStream::next(Polynomial& out) {
  if (pos_ >= size_) return false;
  out = at(pos_++);
  return true;
}

SelfReciprocalStream enumerate_selfreciprocal(int degree, long height, std::uint64_t cap) {
  return SelfReciprocalStream(degree, height, cap);
}

Polynomial sign_normalise(const Polynomial& p) {
  const StructureFlags f = structural_flags(p);
  if (!f.sign_c2 || *f.sign_c2) return p;
  Polynomial q = p.negate_variable();
  const StructureFlags g = structural_flags(q);
  return g.sign_c2 && *g.sign_c2 ? q : p;
}

namespace {

struct Block {
  int degree;
  std::uint64_t begin;
  std::uint64_t end;
};

std::vector<SearchRecord> scan_block(const Block& b, const SearchOptions& opt) {
  const SelfReciprocalStream s(b.degree, opt.height, opt.cap);
  std::vector<SearchRecord> out;
  const int n = b.degree / 2;
  std::vector<long> coeffs(static_cast<std::size_t>(b.degree) + 1);
  for (std::uint64_t i = b.begin; i < b.end; ++i) {
    const auto free = s.free_coefficients(i);
    coeffs.front() = coeffs.back() = 1;
    for (int j = 1; j <= n; ++j) {
      coeffs[static_cast<std::size_t>(j)] = coeffs[static_cast<std::size_t>(b.degree - j)] = free[static_cast<std::size_t>(j - 1)];
    }
    // The first non-zero a_j decides the sign condition; when it fails at odd
    // j the enumeration also contains P(-x), which is kept instead.
    int first = 1;
    while (first <= n && coeffs[static_cast<std::size_t>(first)] == 0) ++first;
    if (first <= n && coeffs[static_cast<std::size_t>(first)] < 0 && first % 2 == 1) continue;
    if (graeffe_bracket_fast(coeffs, 6).lower > opt.theta * 1.01) continue;

    Polynomial p = Polynomial::from_integers(std::span<const long>(coeffs));
    const RootSet rs = find_roots_adaptive(p, opt.bits);
    MeasureResult m = mahler_from_roots(p, rs);
    if (!(m.value < opt.theta) || !(m.lower() > 1.0)) continue;
    if (cyclotomic_factor(p, rs)) continue;
    SearchRecord r;
    r.flags = structural_flags(p);
    r.polynomial = std::move(p);
    r.measure = m;
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace

std::vector<SearchRecord> search_min_mahler(const SearchOptions& opt) {
  if (opt.height < 1) throw std::invalid_argument("search_min_mahler: height must be >= 1");
  if (!(opt.theta > 1.0)) throw std::invalid_argument("search_min_mahler: theta must exceed 1");
  std::vector<Block> blocks;
  const std::uint64_t base = static_cast<std::uint64_t>(2 * opt.height + 1);
  for (int d = std::max(2, opt.min_degree + opt.min_degree % 2); d <= opt.max_degree; d += 2) {
    const SelfReciprocalStream s(d, opt.height, opt.cap);
    // One block per value of the two leading free coefficients.
    std::uint64_t width = s.size();
    for (int k = 0; k < 2 && width >= base * base; ++k) width /= base;
    for (std::uint64_t b = 0; b < s.size(); b += width) blocks.push_back({d, b, std::min(s.size(), b + width)});
  }

  std::vector<std::vector<SearchRecord>> results(blocks.size());
  std::atomic<std::size_t> next{0};
  std::size_t done = 0;
  std::mutex progress_mutex;
  std::exception_ptr failure;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= blocks.size()) return;
      try {
        results[i] = scan_block(blocks[i], opt);
      } catch (...) {
        std::lock_guard<std::mutex> lock(progress_mutex);
        if (!failure) failure = std::current_exception();
        next = blocks.size();
        return;
      }
      std::lock_guard<std::mutex> lock(progress_mutex);
      ++done;
      if (opt.progress) opt.progress(done, blocks.size());
    }
  };
  unsigned jobs = opt.jobs ? opt.jobs : std::max(1u, std::thread::hardware_concurrency());
  jobs = static_cast<unsigned>(std::min<std::size_t>(jobs, std::max<std::size_t>(1, blocks.size())));
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<SearchRecord> out;
  for (auto& r : results) std::move(r.begin(), r.end(), std::back_inserter(out));
  std::stable_sort(out.begin(), out.end(), [](const SearchRecord& a, const SearchRecord& b) {
    if (a.measure.value != b.measure.value) return a.measure.value < b.measure.value;
    const auto& x = a.polynomial.coefficients();
    const auto& y = b.polynomial.coefficients();
    if (x.size() != y.size()) return x.size() < y.size();
    return std::lexicographical_compare(x.rbegin(), x.rend(), y.rbegin(), y.rend());
  });
  for (std::size_t i = 0; i < out.size(); ++i) out[i].rank = static_cast<int>(i) + 1;
  return out;
}

}  // namespace mahlerlab
