#ifndef TTOV_TTOV_HPP
#define TTOV_TTOV_HPP

// Umbrella header: train/test overlap measurement, similarity-based test
// stratification, per-stratum evaluation and leakage-aware splitting.

#include "ttov/config.hpp"
#include "ttov/corpus.hpp"
#include "ttov/error.hpp"
#include "ttov/metrics.hpp"
#include "ttov/report.hpp"
#include "ttov/simsearch.hpp"
#include "ttov/splitkit.hpp"
#include "ttov/stopwords.hpp"
#include "ttov/stratify.hpp"
#include "ttov/textproc.hpp"

#endif  // TTOV_TTOV_HPP
