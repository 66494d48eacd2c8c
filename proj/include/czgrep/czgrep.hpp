#pragma once

// Approximate string matching and regular expression matching over
// ZL78/ZLW-compressed text, without decompressing. The tau parameter trades
// per-element walk length against the size of the sampled anchor set.

#include "czgrep/approx.hpp"
#include "czgrep/error.hpp"
#include "czgrep/format.hpp"
#include "czgrep/oracle.hpp"
#include "czgrep/regex.hpp"
#include "czgrep/selection.hpp"
#include "czgrep/stats.hpp"
#include "czgrep/tnfa.hpp"
#include "czgrep/zl78.hpp"
