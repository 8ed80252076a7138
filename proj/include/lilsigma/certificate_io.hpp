#pragma once

// Line-oriented certificate files, schema "lilsigma-certificate/1". All
// rationals appear as exact base-10 "num/den" strings; serialize(parse(s))
// reproduces s byte for byte.

#include <string>

#include "lilsigma/certifier.hpp"

namespace lilsigma {

std::string serialize(const Certificate& cert);
Certificate parse_certificate(const std::string& text);

void write_certificate_file(const Certificate& cert, const std::string& path);
Certificate read_certificate_file(const std::string& path);

}  // namespace lilsigma
