import json
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import matmul_rows
from vsq import compiler, encoding, levels, qmath
from vsq.compiler import CNOT_RS, CNOT_SR, Circuit, RawPulse, RunConfig, RyR, RyS
from vsq.errors import InvalidScheme, NegativeAngle, OverlappingTransitions, ParseError
from vsq.levels import PhysLevel
from vsq.pulses import Pulse, PulseGroup, PulseProgram, program_unitary
from vsq.verify import random_circuit

R2 = math.sqrt(2) / 2
OMEGA = 2 * math.pi * 1e6


@pytest.fixture
def d():
    return levels.builtin_pr_laf3()


class TestGateOp:
    def test_rotation_needs_angle(self):
        with pytest.raises(ValueError):
            compiler.GateOp("ry_r")

    def test_cnot_rejects_angle(self):
        with pytest.raises(ValueError):
            compiler.GateOp("cnot_rs", angle=1.0)

    def test_raw_needs_pulse(self):
        with pytest.raises(ValueError):
            compiler.GateOp("raw_pulse")

    def test_unknown_kind(self):
        with pytest.raises(ValueError):
            compiler.GateOp("cz")


class TestParse:
    def test_rys(self):
        c = compiler.parse_circuit('{"gates":[{"op":"ry_s","angle":1.5707963267948966}]}')
        assert c == Circuit((RyS(math.pi / 2),))

    def test_empty(self):
        assert compiler.parse_circuit('{"gates":[]}') == Circuit()

    def test_unknown_op(self):
        with pytest.raises(ParseError, match="unknown op"):
            compiler.parse_circuit('{"gates":[{"op":"cnot_xy"}]}')

    def test_missing_angle(self):
        with pytest.raises(ParseError, match=r"gates\[1\]: missing field 'angle'"):
            compiler.parse_circuit('{"gates":[{"op":"cnot_rs"},{"op":"ry_r"}]}')

    def test_bad_json_reports_line(self):
        with pytest.raises(ParseError, match="line 2"):
            compiler.parse_circuit('{"gates":[\n  {"op": }]}')

    def test_raw_pulse(self):
        c = compiler.parse_circuit('{"gates":[{"op":"raw_pulse","transition":"E0-E3","angle":3.0,"phase":0.5}]}')
        assert c.gates[0] == RawPulse((0, 3), 3.0, 0.5)

    def test_raw_pulse_bad_transition(self):
        with pytest.raises(ParseError, match="transition"):
            compiler.parse_circuit('{"gates":[{"op":"raw_pulse","transition":"E3-E0","angle":3.0}]}')

    def test_non_numeric_angle(self):
        with pytest.raises(ParseError):
            compiler.parse_circuit('{"gates":[{"op":"ry_r","angle":"pi"}]}')

    def test_roundtrip(self, rng):
        for _ in range(100):
            c = random_circuit(rng)
            assert compiler.parse_circuit(compiler.serialize_circuit(c)) == c

    def test_program_roundtrip(self, rng):
        for _ in range(50):
            p = compiler.compile(random_circuit(rng))
            assert compiler.parse_program(compiler.serialize_program(p)) == p

    def test_program_overlap_rejected(self):
        text = json.dumps({"groups": [[Pulse((0, 1), 1.0).to_dict(), Pulse((1, 2), 1.0).to_dict()]]})
        with pytest.raises(OverlappingTransitions):
            compiler.parse_program(text)


class TestCompile:
    def test_bell(self):
        prog = compiler.compile(Circuit((RyR(math.pi / 2), CNOT_RS)))
        assert prog.groups == (
            PulseGroup((Pulse((0, 2), math.pi / 2), Pulse((1, 3), math.pi / 2))),
            PulseGroup((Pulse((2, 3), math.pi),)),
        )

    def test_empty(self):
        assert compiler.compile(Circuit()) == PulseProgram()

    def test_raw_passthrough(self):
        prog = compiler.compile(Circuit((RawPulse((0, 3), math.pi),)))
        assert prog.groups == (PulseGroup((Pulse((0, 3), math.pi, math.pi / 2),)),)


class TestCircuitUnitary:
    def test_single(self):
        assert np.array_equal(compiler.circuit_unitary(Circuit((RyS(0.3),))), encoding.rotation_S(0.3))

    def test_bell_rowwise(self):
        u = compiler.circuit_unitary(Circuit((RyR(math.pi / 2), CNOT_RS)))
        # oracle: rows of each factor applied by hand
        ryr = encoding.rotation_R(math.pi / 2)
        cn = np.array([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, -1], [0, 0, 1, 0]])
        psi = matmul_rows(cn, matmul_rows(ryr, [1, 0, 0, 0]))
        assert np.allclose(psi, [R2, 0, 0, R2], atol=1e-15)
        assert np.allclose(u @ [1, 0, 0, 0], psi, atol=1e-15)

    def test_cnot_squared_keeps_spinor_sign(self):
        u = compiler.circuit_unitary(Circuit((CNOT_RS, CNOT_RS)))
        assert qmath.max_abs_diff(u, np.diag([1, 1, -1, -1])) <= 1e-15

    @settings(max_examples=50, deadline=None)
    @given(st.integers(0, 2**32 - 1))
    def test_soundness(self, seed):
        c = random_circuit(np.random.default_rng(seed))
        diff = qmath.max_abs_diff(program_unitary(compiler.compile(c)), compiler.circuit_unitary(c))
        assert diff <= 1e-12


class TestSchedule:
    def test_pi_pulse_duration(self, d):
        prog = compiler.compile(Circuit((CNOT_RS,)))
        sch = compiler.make_schedule(prog, levels.scheme("fig4"), d, RunConfig(OMEGA))
        (e,) = sch.entries
        assert e.duration == 5.0e-7
        assert e.carrier == 7.2e5
        assert sch.total_time == 5.0e-7

    def test_bell_fig4(self, d):
        prog = compiler.compile(Circuit((RyR(math.pi / 2), CNOT_RS)))
        s = levels.scheme("fig4")
        sch = compiler.make_schedule(prog, s, d, RunConfig(OMEGA, 0.0))
        e1, e2, e3 = sch.entries
        assert (e1.transition, e2.transition, e3.transition) == ((0, 2), (1, 3), (2, 3))
        f02 = levels.level_frequency(d, PhysLevel("3P0", "3/2"))
        assert e1.carrier == f02
        assert abs(e1.carrier - (6.27575e14 + 4.5e5)) <= 5e9
        assert e2.carrier == 1.17e6 and e3.carrier == 7.2e5
        assert e1.t_start == e2.t_start == 0.0
        assert e1.duration == e2.duration == 2.5e-7
        assert e3.t_start == 2.5e-7 and e3.duration == 5.0e-7
        assert sch.total_time == 7.5e-7

    def test_gap(self, d):
        prog = compiler.compile(Circuit((CNOT_RS, CNOT_SR, CNOT_RS)))
        sch = compiler.make_schedule(prog, levels.scheme("fig4"), d, RunConfig(OMEGA, 1e-6))
        assert [e.t_start for e in sch.entries] == [0.0, 5e-7 + 1e-6, 2 * 5e-7 + 2 * 1e-6]
        assert sch.total_time == sum(sch.group_durations) + 1e-6 * 2

    def test_empty(self, d):
        sch = compiler.make_schedule(PulseProgram(), levels.scheme("fig3"), d, RunConfig(OMEGA))
        assert sch.entries == () and sch.total_time == 0

    def test_negative_angle(self, d):
        prog = compiler.compile(Circuit((RyS(-1.0),)))
        with pytest.raises(NegativeAngle):
            compiler.make_schedule(prog, levels.scheme("fig4"), d, RunConfig(OMEGA))

    def test_invalid_scheme(self, d):
        bad = levels.LevelScheme("dup", (PhysLevel("3H4"), PhysLevel("1D2"), PhysLevel("1D2"), PhysLevel("3P0")))
        with pytest.raises(InvalidScheme):
            compiler.make_schedule(PulseProgram(), bad, d, RunConfig(OMEGA))

    def test_run_config(self):
        with pytest.raises(ValueError):
            RunConfig(0.0)
        with pytest.raises(ValueError):
            RunConfig(1.0, -1.0)
        assert RunConfig.from_rabi_hz(1e6).rabi_angular_frequency == OMEGA

    def test_carriers_bitwise(self, d, rng):
        for name in ("fig3", "fig4"):
            s = levels.scheme(name)
            prog = compiler.compile(Circuit((RyR(1.0), RyS(2.0), CNOT_RS, CNOT_SR, RawPulse((0, 3), 1.0))))
            for e in compiler.make_schedule(prog, s, d, RunConfig(OMEGA)).entries:
                assert e.carrier == levels.transition_frequency(s, d, e.transition)


class TestExport:
    def test_pi_line(self, d):
        sch = compiler.make_schedule(
            compiler.compile(Circuit((CNOT_RS,))), levels.scheme("fig4"), d, RunConfig(OMEGA)
        )
        text = compiler.export_schedule(sch)
        assert text == (
            "t_start_s,duration_s,carrier_hz,transition,angle_rad,phase_rad\n"
            "0,4.9999999999999998e-07,720000,E2-E3,3.1415926535897931,1.5707963267948966\n"
        )

    def test_empty(self):
        assert compiler.export_schedule(compiler.Schedule()) == (
            "t_start_s,duration_s,carrier_hz,transition,angle_rad,phase_rad\n"
        )

    def test_sorted_and_roundtrip(self, d):
        prog = compiler.compile(Circuit((RyR(math.pi / 2), CNOT_RS, RyS(0.3))))
        sch = compiler.make_schedule(prog, levels.scheme("fig3"), d, RunConfig(OMEGA, 2e-7))
        text = compiler.export_schedule(sch)
        assert "\r" not in text
        back = compiler.parse_schedule_csv(text)
        starts = [e.t_start for e in back]
        assert starts == sorted(starts)
        assert back == list(sch.entries)

    def test_bad_header(self):
        with pytest.raises(ParseError):
            compiler.parse_schedule_csv("a,b\n")
