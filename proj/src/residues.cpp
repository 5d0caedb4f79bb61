#include "cubesum/residues.hpp"

#include <algorithm>

namespace cubesum {

ResidueProfile residue_profile(u64 n) {
  ResidueProfile r;
  r.n = n;
  r.is_even = n % 2 == 0;
  r.mod9 = static_cast<unsigned>(n % 9);
  r.mod7 = static_cast<unsigned>(n % 7);
  r.in_script_n = r.is_even && std::find(kExcludedMod9.begin(), kExcludedMod9.end(), r.mod9) == kExcludedMod9.end() &&
                  std::find(kExcludedMod7.begin(), kExcludedMod7.end(), r.mod7) == kExcludedMod7.end();
  return r;
}

bool in_script_n(u64 n) { return residue_profile(n).in_script_n; }

}  // namespace cubesum
