#pragma once

#include "cedga/chain.hpp"
#include "cedga/dga.hpp"
#include "cedga/module.hpp"
#include "cedga/surgery.hpp"

#include <string>

namespace cedga {

// Text formats are JSON; see README for the schemas. Parsing canonicalizes
// (generators sorted by name), so serialize(parse(t)) is the canonical form
// and parse(serialize(d)) == d for canonical d.

Dga parse_dga(const std::string& text);
std::string serialize_dga(const Dga& d);
Dga load_dga(const std::string& path);
void save_dga(const Dga& d, const std::string& path);

ChainComplex parse_complex(const std::string& text);
std::string serialize_complex(const ChainComplex& c);
ChainComplex load_complex(const std::string& path);

DgModule parse_module(const std::string& text, const Dga& over);
std::string serialize_module(const DgModule& m);
DgModule load_module(const std::string& path, const Dga& over);

// CapSpec files carry a base file reference, counts and potentials; the base
// path is resolved relative to the spec file's directory.
CapSpec load_capspec(const std::string& path);

std::string serialize_augmentation(const Dga& d, const Augmentation& eps);
Augmentation parse_augmentation(const std::string& text, const Dga& d);

Rational parse_rational(const std::string& s); // "p" or "p/q"
std::string rational_to_string(const Rational& r);

} // namespace cedga
