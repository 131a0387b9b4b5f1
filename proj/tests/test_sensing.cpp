#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qseq/library.hpp"
#include "qseq/sensing.hpp"

using namespace qseq;

TEST_CASE("WAHUHA sensing average matches the tabulated matrix") {
    auto rep = sensing_average(library_sequence(LibraryName::WAHUHA));
    REQUIRE(rep.H_sense.rows() == 2);
    Mat expected(2, 2);
    expected << cd(1.0 / 6, 0), cd(1.0 / 6, -1.0 / 6), cd(1.0 / 6, 1.0 / 6),
        cd(-1.0 / 6, 0);
    CHECK((rep.H_sense - expected).cwiseAbs().maxCoeff() < 1e-3);
    CHECK(rep.gap == doctest::Approx(0.577).epsilon(2e-3));
}

TEST_CASE("tabulated eigenvalue gaps") {
    CHECK(sensing_average(library_sequence(LibraryName::CYL6)).gap ==
          doctest::Approx(0.789).epsilon(1e-3));
    CHECK(sensing_average(library_sequence(LibraryName::HORD_QUTRIT_8)).gap ==
          doctest::Approx(0.667).epsilon(1e-3));
}

TEST_CASE("report internals are mutually consistent") {
    for (const auto& name : {"CYL6", "HORD_QUTRIT_8", "SEQ1_CYCLIC_ECHO"}) {
        auto rep = sensing_average(library_sequence(name));
        CHECK(is_hermitian(rep.H_sense, 1e-10));
        // eigenvalues ascending; gap = extremes
        Eigen::SelfAdjointEigenSolver<Mat> es(rep.H_sense);
        for (int i = 0; i < rep.eigenvalues.size(); ++i)
            CHECK(rep.eigenvalues(i) == doctest::Approx(es.eigenvalues()(i)).epsilon(1e-10));
        CHECK(rep.gap == doctest::Approx(rep.eigenvalues(rep.eigenvalues.size() - 1) -
                                         rep.eigenvalues(0)));
        // optimal pair columns are eigenvectors of the extreme eigenvalues
        Mat H = rep.H_sense;
        Vec lo = rep.optimal_pair.col(0), hi = rep.optimal_pair.col(1);
        CHECK((H * lo - rep.eigenvalues(0) * lo).norm() < 1e-9);
        CHECK((H * hi - rep.eigenvalues(rep.eigenvalues.size() - 1) * hi).norm() < 1e-9);
    }
}

TEST_CASE("ideal dwell average equals the direct frame sum") {
    const auto& seq = library_sequence(LibraryName::SEQ1_CYCLIC_ECHO);
    auto rep = sensing_average(seq, true);
    auto tr = seq.frame_trace();
    double total = 0;
    for (double d : tr.durations) total += d;
    Mat direct = Mat::Zero(3, 3);
    for (size_t k = 0; k < tr.frames.size(); ++k)
        direct += tr.durations[k] / total * tr.frames[k];
    CHECK((rep.H_sense - direct).norm() < 1e-10);
}

TEST_CASE("waveform averaging is linear and vanishes for zero field") {
    const auto& seq = library_sequence(LibraryName::CYL6);
    std::vector<double> zero(seq.segments.size(), 0.0);
    CHECK(sensing_average_waveform(seq, zero).H_sense.norm() < 1e-12);
    std::vector<double> ones(seq.segments.size(), 1.0);
    std::vector<double> twos(seq.segments.size(), 2.0);
    Mat H1 = sensing_average_waveform(seq, ones).H_sense;
    Mat H2 = sensing_average_waveform(seq, twos).H_sense;
    CHECK((H2 - 2.0 * H1).norm() < 1e-12);
    CHECK_THROWS(sensing_average_waveform(seq, std::vector<double>(3, 1.0)));
}

TEST_CASE("compare_sequences sorts by gap descending") {
    std::vector<PulseSequence> seqs = {library_sequence(LibraryName::HORD_QUTRIT_8),
                                       library_sequence(LibraryName::CYL6)};
    auto reports = compare_sequences(seqs);
    REQUIRE(reports.size() == 2);
    CHECK(reports[0].gap >= reports[1].gap);
    CHECK(reports[0].name == "CYL6");
}
