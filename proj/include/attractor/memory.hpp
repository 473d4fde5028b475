#pragma once
// Allocation helpers for the large flat arrays the solver streams through.
// default_init_allocator skips value-initialization on resize, since callers
// overwrite every slot right after sizing, and advises transparent huge
// pages for multi-megabyte blocks, which trims TLB misses once working sets
// reach hundreds of megabytes. Both are invisible to correctness; vectors
// using it behave like any other.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <new>
#include <type_traits>
#include <utility>
#include <vector>
#if defined(__linux__)
#include <sys/mman.h>
#endif
#if defined(__GLIBC__)
#include <malloc.h>
#endif

namespace attractor::detail {

// Freed multi-megabyte buffers normally go straight back to the kernel, so
// the next detection refaults and re-collapses every page it touches. For
// workloads that run detection repeatedly in one process, keeping freed
// blocks in the allocator arena removes that churn. Process-wide setting.
inline void retain_freed_memory() {
#if defined(__GLIBC__)
  mallopt(M_MMAP_MAX, 0);
  mallopt(M_TRIM_THRESHOLD, -1);
#endif
}

inline void prefetch_read(const void* p) {
#if defined(__GNUC__) || defined(__clang__)
  __builtin_prefetch(p);
#else
  (void)p;
#endif
}

inline void advise_huge_pages(void* p, std::size_t bytes) {
#if defined(__linux__) && defined(MADV_HUGEPAGE)
  // madvise wants page-aligned addresses and only whole 2 MB regions can be
  // backed by huge pages, so the range shrinks inward to that granularity.
  constexpr std::uintptr_t huge = std::uintptr_t{2} << 20;
  auto addr = reinterpret_cast<std::uintptr_t>(p);
  std::uintptr_t first = (addr + huge - 1) & ~(huge - 1);
  std::uintptr_t last = (addr + bytes) & ~(huge - 1);
  if (last > first) madvise(reinterpret_cast<void*>(first), last - first, MADV_HUGEPAGE);
#else
  (void)p;
  (void)bytes;
#endif
}

template <class T>
class default_init_allocator : public std::allocator<T> {
public:
  template <class U>
  struct rebind {
    using other = default_init_allocator<U>;
  };
  using std::allocator<T>::allocator;

  T* allocate(std::size_t n) {
    T* p = std::allocator<T>::allocate(n);
    advise_huge_pages(p, n * sizeof(T));
    return p;
  }
  template <class U>
  void construct(U* p) noexcept(std::is_nothrow_default_constructible_v<U>) {
    ::new (static_cast<void*>(p)) U;
  }
  template <class U, class... Args>
  void construct(U* p, Args&&... args) {
    ::new (static_cast<void*>(p)) U(std::forward<Args>(args)...);
  }
};

template <class T>
using raw_vector = std::vector<T, default_init_allocator<T>>;

}  // namespace attractor::detail
