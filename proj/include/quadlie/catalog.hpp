#pragma once

#include "quadlie/manin.hpp"

#include <string>
#include <vector>

namespace quadlie {

/// Trivial T*-extension of a small nilpotent algebra with a fixed symplectic structure.
struct CatalogEntry {
    std::string name;
    LieAlgebra base;
    Matrix base_derivation;
    TStarData extension;
    DerivationMatrix dbar;
    BilinearForm omega;
    Fingerprint fingerprint;
};

/// A1, A2, A3, A4, L2, L2+A1, L3.
const std::vector<std::string>& catalog_names();

/// Throws InputError for an unknown name.
LieAlgebra catalog_base(const std::string& name);
CatalogEntry build_entry(const std::string& name);

struct DimensionRow {
    std::size_t dim = 0;
    std::vector<std::string> names;
    std::vector<Fingerprint> fingerprints;
    bool distinct = true;
};

/// One row per extension dimension (2, 4, 6, 8).
std::vector<DimensionRow> distinguish_all();

struct ChainReport {
    std::vector<std::pair<std::string, bool>> steps;
    bool ok() const;
};

/// Symplectic form <-> derivation both ways, CYBE for Dbar^-1, eigen split,
/// nilpotent Manin centers, and both descent towers.
ChainReport certify_chain(const CatalogEntry& e);

}  // namespace quadlie
