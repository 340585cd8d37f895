#pragma once

#include <istream>
#include <string>

#include "arakelov/bundle.hpp"

namespace arakelov {

/// Gram file:
///
///     # comments and blank lines are ignored
///     Q(sqrt{-1})
///     2
///     <rank rows of rank entries for each infinite place, real places first>
///
/// Entries are integers, decimals or "p/q". Entries of a complex-place block
/// are written "re,im" (a bare value means im = 0).
ArakelovBundle parse_gram(std::istream& in);
ArakelovBundle parse_gram_string(const std::string& text);
ArakelovBundle read_gram_file(const std::string& path);

/// Inverse of parse_gram with 17 significant digits (exact for doubles);
/// rational Grams over Q are written exactly.
std::string format_gram(const ArakelovBundle& E);

}  // namespace arakelov
