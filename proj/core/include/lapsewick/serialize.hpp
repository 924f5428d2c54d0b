#pragma once

#include <string>

#include "lapsewick/fields.hpp"

namespace lapsewick {

/// Field file format: first line is a JSON header
///   {"dim":d,"nt":n,"nx":n,"extent_t":e,"extent_x":e,"complex":b}
/// followed by row-major CSV, one row per grid line along the last axis.
/// Complex entries are quoted "re,im" cells. Throws std::runtime_error on
/// I/O or format errors.
void write_field(const std::string& path, const Field<double>& f);
void write_field(const std::string& path, const Field<cplx>& f);
Field<cplx> read_complex_field(const std::string& path);
Field<double> read_real_field(const std::string& path);

}  // namespace lapsewick
