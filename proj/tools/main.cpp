#include <iostream>

#if defined(__GLIBC__)
#include <malloc.h>
#endif

#include "cli/app.hpp"

int main(int argc, char** argv) {
#if defined(__GLIBC__)
  // Each steady-state solve allocates ~20 MB of scratch; keep it in the heap
  // instead of mapping and faulting it in again for every sweep point.
  mallopt(M_MMAP_THRESHOLD, 256 << 20);
  mallopt(M_TRIM_THRESHOLD, 1 << 30);
#endif
  return cg2cli::run(argc, argv, std::cout, std::cerr);
}
