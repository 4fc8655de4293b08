#ifndef BSZ_BSZ_HPP
#define BSZ_BSZ_HPP

// Everything except JSON I/O, which additionally needs nlohmann/json.
#include "bsz/errors.hpp"
#include "bsz/rational.hpp"
#include "bsz/context.hpp"
#include "bsz/mpoly.hpp"
#include "bsz/upoly.hpp"
#include "bsz/linear.hpp"
#include "bsz/parse.hpp"
#include "bsz/weyl.hpp"
#include "bsz/section.hpp"
#include "bsz/bs.hpp"
#include "bsz/transport.hpp"
#include "bsz/invariants.hpp"
#include "bsz/igusa.hpp"

#endif  // BSZ_BSZ_HPP
