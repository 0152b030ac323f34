#pragma once

#include <cstddef>
#include <string>

#include "qseg/neqr.hpp"

namespace qseg {

struct PgmReadOptions {
  bool rescale = false;
  std::size_t rescale_bits = 8;
};

enum class PgmFormat { Ascii, Binary };

GrayImage parse_pgm(const std::string& bytes, const PgmReadOptions& options = {});
GrayImage read_pgm(const std::string& path, const PgmReadOptions& options = {});

std::string format_pgm(const GrayImage& img, PgmFormat format = PgmFormat::Binary);
std::string format_pgm(const BinaryImage& img, PgmFormat format = PgmFormat::Binary);
void write_pgm(const GrayImage& img, const std::string& path, PgmFormat format = PgmFormat::Binary);
void write_pgm(const BinaryImage& img, const std::string& path, PgmFormat format = PgmFormat::Binary);

// Any nonzero pixel maps to 1.
BinaryImage to_binary(const GrayImage& img);

// Writes to a temporary sibling, then renames over `path`.
void write_file_atomic(const std::string& path, const std::string& bytes);
std::string read_file(const std::string& path);

}  // namespace qseg
