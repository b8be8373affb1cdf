#pragma once

#include <string>

#include "cat0/complex.hpp"

namespace cat0 {

// JSON text: {"disk_condition", "vertices": [{"id","type"}], "faces", "boundary_margin"}.
// Vertex ids must be 0..n-1 in order. store(load(text)) reproduces text exactly
// for any text written by store.
std::string store_complex(const TriComplex& cx);
TriComplex load_complex(const std::string& text);

TriComplex read_complex_file(const std::string& path);
void write_complex_file(const TriComplex& cx, const std::string& path);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace cat0
