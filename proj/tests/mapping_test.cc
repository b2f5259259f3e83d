#include "cyclesim/mapping.h"

#include <algorithm>
#include <bit>
#include <map>
#include <random>

#include "cyclesim/builder.h"
#include "cyclesim/errors.h"
#include "cyclesim/oracle.h"
#include "cyclesim/verify.h"
#include "gtest/gtest.h"
#include "test_util.h"

using namespace cyclesim;

TEST(mapping, sub_op_spec_positions) {
    SubOpSpec s = sub_op_spec(3, 1);
    EXPECT_EQ(s.broken, (Edge{2, 1}));
    EXPECT_EQ(s.new_lo, 4);
    EXPECT_EQ(s.new_hi, 5);
    for (int m = 3; m <= 9; ++m) {
        for (int l = 1; l <= edges_among(m); ++l) {
            SubOpSpec spec = sub_op_spec(m, l);
            EXPECT_GT(spec.new_lo, edges_among(m));
            EXPECT_LE(spec.new_hi, edges_among(m + 1));
            EXPECT_NE(spec.new_lo, spec.new_hi);
        }
    }
    EXPECT_THROW(sub_op_spec(3, 4), std::invalid_argument);
}

TEST(mapping, sub_op_forward_pattern) {
    // |100> (x) |1 11 000> under U[3,1].
    BasisLabel in{PathMask::from_binary(4, "1 11 000").bits(), 0b001, AuxBit::kAbsent};
    BasisLabel out = in;
    EXPECT_TRUE(apply_sub_op(out, sub_op_spec(3, 1)));
    EXPECT_EQ(out.ancilla, 0u);
    EXPECT_EQ(PathMask(4, out.path).to_grouped(), "0 11 110");

    BasisLabel untouched = in;
    EXPECT_FALSE(apply_sub_op(untouched, sub_op_spec(3, 2)));
    EXPECT_EQ(untouched, in);

    EXPECT_TRUE(apply_sub_op(out, sub_op_spec(3, 1)));
    EXPECT_EQ(out, in);
}

TEST(mapping, sub_ops_are_involutions_exhaustively) {
    for (int m = 3; m <= 4; ++m) {
        const int path_bits = edges_among(m + 1);
        const int ancilla_bits = edges_among(m);
        for (int l = 1; l <= ancilla_bits; ++l) {
            SubOpSpec spec = sub_op_spec(m, l);
            for (std::uint64_t p = 0; p < (1ULL << path_bits); ++p) {
                for (std::uint64_t a = 0; a < (1ULL << ancilla_bits); ++a) {
                    BasisLabel x{p, a, AuxBit::kAbsent};
                    BasisLabel y = x;
                    apply_sub_op(y, spec);
                    apply_sub_op(y, spec);
                    ASSERT_EQ(x, y);
                }
            }
        }
    }
}

TEST(mapping, state_level_sub_op_is_self_inverse) {
    SparseState s = attach_ancilla_uniform(initial_state(4), 3);
    SubOpSpec spec = sub_op_spec(3, 2);
    EXPECT_EQ(apply_sub_op(apply_sub_op(s, spec), spec), s);
    EXPECT_THROW(apply_sub_op(initial_state(4), spec), WidthMismatch);
}

TEST(mapping, example_three_to_four) {
    SparseState in = attach_ancilla_uniform(initial_state(4), 3);
    SparseState out = apply_um(in, 3);
    EXPECT_EQ(test_util::kets(out), kExampleOneKets);
    for (const Term &t : out.terms()) {
        EXPECT_EQ(t.c, 1);
        EXPECT_EQ(t.label.ancilla, 0u);
    }
    EXPECT_EQ(apply_um_dagger(out, 3), in);
}

TEST(mapping, level_four_fired_and_unfired_counts) {
    SparseState level4 = widen(build_superposition(4).state, 5);
    SparseState after = apply_um(attach_ancilla_uniform(level4, 4), 4);

    // Independent count: a (unit ancilla l, cycle) pair fires iff the cycle has edge l.
    std::size_t expect_fired = 0;
    std::size_t expect_unfired = 0;
    for (const PathMask &cycle : enumerate_cycles(4, 5)) {
        for (int l = 1; l <= edges_among(4); ++l) {
            (cycle.test(l) ? expect_fired : expect_unfired) += 1;
        }
    }
    ASSERT_EQ(expect_fired, 12u);
    ASSERT_EQ(expect_unfired, 6u);

    std::size_t fired = 0;
    std::size_t unfired = 0;
    for (const Term &t : after.terms()) {
        if (t.label.ancilla == 0) {
            ++fired;
        } else {
            ++unfired;
            EXPECT_EQ(std::popcount(t.label.ancilla), 1);
        }
    }
    EXPECT_EQ(fired, expect_fired);
    EXPECT_EQ(unfired, expect_unfired);
}

TEST(mapping, unset_edge_leaves_term_unchanged) {
    // 4-cycle (1,3,2,4) lacks edge (2,1); ancilla pointing at it does nothing.
    BasisLabel l{PathMask::from_binary(5, "0 11 110 0000").bits(), 0b000001, AuxBit::kAbsent};
    SparseState s(5, 4, 6, false, {Term{l, 1}});
    EXPECT_EQ(apply_um(s, 4), s);
}

TEST(mapping, dagger_inverts_um_on_random_states) {
    std::mt19937_64 rng(99);
    for (int m = 3; m <= 6; ++m) {
        for (int trial = 0; trial < 20; ++trial) {
            std::vector<Term> terms;
            for (int k = 0; k < 30; ++k) {
                terms.push_back({{rng() & ((1ULL << edges_among(m + 1)) - 1), rng() & ((1ULL << edges_among(m)) - 1),
                                  AuxBit::kAbsent},
                                 static_cast<Coefficient>(rng() % 7) - 3});
            }
            if (std::all_of(terms.begin(), terms.end(), [](const Term &t) { return t.c == 0; })) {
                continue;
            }
            SparseState s(m + 1, m, edges_among(m), false, terms);
            ASSERT_EQ(apply_um_dagger(apply_um(s, m), m), s);
            ASSERT_EQ(apply_um(apply_um_dagger(s, m), m), s);
        }
    }
}

TEST(mapping, dagger_on_next_level_entangles_with_set_bits) {
    for (int m = 3; m <= 6; ++m) {
        SparseState upper = build_superposition(m + 1).state;
        SparseState down = apply_um_dagger(attach_ancilla_zero(upper, m), m);
        ASSERT_EQ(down.size(), upper.size());
        std::map<std::uint64_t, std::vector<std::uint64_t>> ancillae_per_cycle;
        for (const Term &t : down.terms()) {
            ASSERT_EQ(std::popcount(t.label.ancilla), 1);
            PathMask p = down.path_mask(t);
            ASSERT_TRUE(is_cycle(p, m));
            ASSERT_TRUE((t.label.path & t.label.ancilla) != 0) << "ancilla must point at a set edge";
            ancillae_per_cycle[t.label.path].push_back(t.label.ancilla);
        }
        // Each level-m cycle is entangled with every one of its m set bits.
        ASSERT_EQ(ancillae_per_cycle.size(), enumerate_cycles(m).size());
        for (const auto &[path, ancillae] : ancillae_per_cycle) {
            std::uint64_t all = 0;
            for (std::uint64_t a : ancillae) {
                all |= a;
            }
            ASSERT_EQ(all, path);
        }
    }
}

TEST(mapping, example_run_backward) {
    std::vector<Term> terms;
    for (const std::string &ket : kExampleOneKets) {
        std::string path = ket.substr(ket.find(">|") + 2);
        path.pop_back();
        terms.push_back({{PathMask::from_binary(4, path).bits(), 0, AuxBit::kAbsent}, 1});
    }
    SparseState rhs(4, 3, 3, false, terms);
    EXPECT_EQ(apply_um_dagger(rhs, 3), attach_ancilla_uniform(initial_state(4), 3));
}

TEST(mapping, aux_marks_fired_terms) {
    SparseState s = attach_aux(attach_ancilla_uniform(initial_state(4), 3));
    SparseState out = apply_um_aux(s, 3);
    for (const Term &t : out.terms()) {
        EXPECT_EQ(t.label.aux, AuxBit::kOne);
        EXPECT_EQ(t.label.ancilla, 0u);
    }

    BasisLabel unset{PathMask::from_binary(5, "0 11 110 0000").bits(), 0b000001, AuxBit::kZero};
    SparseState u = apply_um_aux(SparseState(5, 4, 6, true, {Term{unset, 1}}), 4);
    EXPECT_EQ(u.terms()[0].label.aux, AuxBit::kZero);
    EXPECT_EQ(u.terms()[0].label.path, unset.path);

    BasisLabel bad = unset;
    bad.aux = AuxBit::kOne;
    EXPECT_THROW(apply_um_aux(SparseState(5, 4, 6, true, {Term{bad, 1}}), 4), std::invalid_argument);
    EXPECT_THROW(apply_um_aux(attach_ancilla_uniform(initial_state(4), 3), 3), WidthMismatch);
}

TEST(mapping, aux_projection_matches_ancilla_projection_term_for_term) {
    for (int m = 4; m <= 5; ++m) {
        SparseState input = attach_ancilla_uniform(widen(build_superposition(m).state, m + 1), m);
        Projection plain = project_ancilla_zero(apply_um(input, m));
        Projection aux = project_aux_one(apply_um_aux(attach_aux(input), m));
        EXPECT_EQ(aux.p, plain.p);
        EXPECT_EQ(detach_ancilla(aux.post), plain.post);
    }
}

TEST(mapping, matrix_elements) {
    BasisLabel col{PathMask::from_binary(4, "1 11 000").bits(), 0b001, AuxBit::kAbsent};
    BasisLabel fired_row{PathMask::from_binary(4, "0 11 110").bits(), 0, AuxBit::kAbsent};
    EXPECT_EQ(matrix_element(4, 3, fired_row, col), 1);
    EXPECT_EQ(matrix_element(4, 3, col, col), 0);
    BasisLabel wrong{PathMask::from_binary(4, "1 01 101").bits(), 0b010, AuxBit::kAbsent};
    EXPECT_EQ(matrix_element(4, 3, wrong, col), 0);
    // Unfired label: identity on the diagonal.
    BasisLabel idle{PathMask::from_binary(4, "1 11 000").bits(), 0, AuxBit::kAbsent};
    EXPECT_EQ(matrix_element(4, 3, idle, idle), 1);
    EXPECT_EQ(matrix_element(4, 3, col, fired_row), 1);
}

TEST(mapping, matrix_is_a_permutation_for_small_levels) {
    for (int m = 3; m <= 4; ++m) {
        PermutationCheck c = check_um_permutation_exhaustive(m);
        EXPECT_EQ(c.labels, 1ULL << (edges_among(m) + edges_among(m + 1)));
        EXPECT_EQ(c.violations, 0u);
    }
    for (int m = 5; m <= 6; ++m) {
        PermutationCheck c = check_um_inverse_sampled(m, 20000, 3);
        EXPECT_EQ(c.violations, 0u);
    }
}

TEST(mapping, order_independent_on_valid_domain) {
    std::mt19937_64 rng(5);
    for (int m = 3; m <= 6; ++m) {
        SparseState input = attach_ancilla_uniform(widen(build_superposition(m).state, m + 1), m);
        SparseState reference = apply_um(input, m);
        std::vector<SubOpSpec> specs = LevelMapping(m).sub_ops();
        for (int trial = 0; trial < 5; ++trial) {
            std::shuffle(specs.begin(), specs.end(), rng);
            SparseState s = input;
            for (const SubOpSpec &spec : specs) {
                s = apply_sub_op(s, spec);
            }
            ASSERT_EQ(s, reference);
        }
    }
}

TEST(mapping, fired_outputs_are_cycles_on_one_more_vertex) {
    for (int m = 3; m <= 7; ++m) {
        SparseState input = attach_ancilla_uniform(widen(build_superposition(m).state, m + 1), m);
        SparseState out = apply_um(input, m);
        for (const Term &t : out.terms()) {
            if (t.label.ancilla == 0) {
                ASSERT_TRUE(is_cycle(PathMask(m + 1, t.label.path), m + 1));
            }
        }
    }
}

TEST(mapping, exactly_one_reverse_pattern_per_next_level_cycle) {
    for (int m = 3; m <= 7; ++m) {
        const LevelMapping mapping(m);
        for (const PathMask &cycle : enumerate_cycles(m + 1)) {
            int matches = 0;
            for (const SubOpSpec &spec : mapping.sub_ops()) {
                BasisLabel x{cycle.bits(), 0, AuxBit::kAbsent};
                matches += apply_sub_op(x, spec) ? 1 : 0;
            }
            ASSERT_EQ(matches, 1) << cycle.to_grouped();
        }
    }
}

TEST(mapping, trace_lines) {
    std::vector<GateTraceEntry> trace;
    apply_um(attach_ancilla_uniform(initial_state(4), 3), 3, &trace);
    ASSERT_EQ(trace.size(), 3u);
    EXPECT_EQ(format_trace_line(trace[0]), "U[3,1]: break=(2,1) new=(4,5) fired=1");
    EXPECT_EQ(format_trace_line(trace[2]), "U[3,3]: break=(3,2) new=(5,6) fired=1");
}

TEST(mapping, rejects_width_mismatch) {
    SparseState s = attach_ancilla_uniform(initial_state(5), 3);
    EXPECT_THROW(apply_um(s, 4), WidthMismatch);
    EXPECT_THROW(apply_um_dagger(s, 4), WidthMismatch);
    EXPECT_THROW(apply_um(attach_ancilla_uniform(widen(build_superposition(4).state, 4), 4), 4), WidthMismatch);
}
