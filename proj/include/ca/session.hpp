#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "ca/frobmult.hpp"
#include "ca/modcalc.hpp"

namespace ca {

/// A named collection of modules, sequences, ideals, complexes and prime data
/// over one ring, as read from a session file.
///
/// Session file (JSON):
///   {"characteristic": 2, "variables": ["x", "y"], "ideal": ["x*y"],
///    "equidimensional": true,
///    "modules":    {"M": {"presentation": [["x^2"]], "row_degrees": [0]}},
///    "sequences":  {"s": ["y"]},
///    "ideals":     {"J": ["x", "z"]},
///    "complexes":  {"K": [[["x", "y"]], [["y"], ["x"]]]},
///    "primes":     {"P": {"ideal": ["x", "y"], "lengths": [1, 2, 4]}}}
///
/// Complexes list their differentials d_1, d_2, ...; F_0 sits in degree 0 and
/// the remaining shifts are inferred from the entries.
struct Session {
  RingPtr ring;
  std::map<std::string, FgModule> modules;
  std::map<std::string, std::vector<Poly>> sequences;
  std::map<std::string, std::vector<Poly>> ideals;
  std::map<std::string, FreeComplex> complexes;
  std::map<std::string, PrimeDatum> primes;

  const FgModule& module(const std::string& name) const;
  const FreeComplex& complex(const std::string& name) const;
  const PrimeDatum& prime(const std::string& name) const;
};

/// Throws Error(Parse) with line and column for malformed JSON, Error(Parse)
/// naming the entry for bad polynomials, unknown keys or duplicate names, and
/// Error(NotHomogeneous) naming the entry for inhomogeneous input.
Session parse_session(std::string_view text, const GbOptions& options = {});
Session load_session(const std::filesystem::path& path, const GbOptions& options = {});

}  // namespace ca
