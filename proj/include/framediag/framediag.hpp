#ifndef FRAMEDIAG_FRAMEDIAG_HPP
#define FRAMEDIAG_FRAMEDIAG_HPP

#include "framediag/battery.hpp"
#include "framediag/block_spectrum.hpp"
#include "framediag/complex_matrix.hpp"
#include "framediag/diagnostics.hpp"
#include "framediag/error.hpp"
#include "framediag/frame_ops.hpp"
#include "framediag/json_io.hpp"
#include "framediag/linalg.hpp"
#include "framediag/paper_examples.hpp"
#include "framediag/random.hpp"
#include "framediag/realize.hpp"
#include "framediag/report.hpp"
#include "framediag/sequence.hpp"
#include "framediag/sweep.hpp"
#include "framediag/version.hpp"

#endif  // FRAMEDIAG_FRAMEDIAG_HPP
