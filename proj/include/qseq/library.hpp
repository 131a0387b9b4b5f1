#pragma once

// Built-in sequence library and the named frame sets the sequences use.

#include "qseq/sequence.hpp"

#include <map>

namespace qseq {

enum class LibraryName {
    WAHUHA,
    CYL6,
    HORD_QUTRIT_8,
    SEQ1_CYCLIC_ECHO,
    SEQ2_INTERACTION_DECOUPLING,
    SEQA_ROBUST_CYCLIC_ECHO,
    SEQB_NONROBUST,
    SEQC_DROID_C3PO,
    SCAR_XY,
    NONGEODESIC_SI,
};

std::vector<std::string> library_names();
LibraryName library_name_from_string(const std::string& name);
std::string to_string(LibraryName name);

// Cached, immutable library sequences.
const PulseSequence& library_sequence(LibraryName name);
const PulseSequence& library_sequence(const std::string& name);

// Two-group schedule for the scar-engineering sequence: both groups are pulsed
// in lockstep (identical segment grid); the second group flips the signs of
// the {z, xt, yt, zt} frame families in the second iteration.
struct ScarSequences {
    PulseSequence group1, group2;
};
const ScarSequences& scar_sequences();

// Named frame collections.
struct WeightedFrames {
    std::vector<std::string> labels;
    std::vector<Mat> frames;
    std::vector<Mat> unitaries; // realizing unitaries
    std::vector<double> weights;
};

// The standard 12-frame qutrit decoupling set {+-Sx, +-Sy, +-Sz, +-Sxt,
// +-Syt, +-Szt}, uniform weights.
const WeightedFrames& frames12();
// The alternate 12-frame set (single off-diagonal pair on each transition,
// both quadratures, +- signs), uniform weights.
const WeightedFrames& frames12_alternate();
// CYL-6 frame set (6 frames), uniform weights.
const WeightedFrames& frames_cyl6();
// HoRD-qutrit-8 stand-in frame set (8 frames), uniform weights.
const WeightedFrames& frames_hord8();
// The 12-frame set decoupling the echo-symmetrized interaction.
const WeightedFrames& frames_nongeodesic12();
// Qubit x/y/z frame cycle (WAHUHA).
const WeightedFrames& frames_wahuha();

// Base 12-frame cycle order used by SEQB/SEQC/SCAR_XY.
const std::vector<std::string>& base12_cycle();
// Frame operator of a named 12-frame family member, e.g. "+z", "-xt".
Mat frame_by_name(const std::string& name);

// The echo-symmetrized two-body interaction (9x9):
// (1/2) SzSz + (1/2) Szp Szp - (1/3)(HXY^{01} + HXY^{12} + HXY^{02}).
Mat symmetrized_interaction();

} // namespace qseq
