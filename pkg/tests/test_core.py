from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from transship import (Arc, FlowNetwork, SupplyVector, TerminalSet,
                       format_rational, net_supply, parse_rational,
                       validate_instance)
from conftest import instance_b_network, single_arc_network


class TestRationals:
    def test_parse_integer(self):
        assert parse_rational(7) == F(7)
        assert parse_rational("-3") == F(-3)

    def test_parse_fraction_string(self):
        assert parse_rational("5/2") == F(5, 2)
        assert parse_rational("-22/9") == F(-22, 9)

    def test_parse_rejects_float_and_bool(self):
        with pytest.raises(ValueError):
            parse_rational(2.5)
        with pytest.raises(ValueError):
            parse_rational(True)
        with pytest.raises(ValueError):
            parse_rational("1.5")

    def test_format(self):
        # integral values stay bare ints so JSON documents read naturally
        assert format_rational(F(5)) == 5
        assert isinstance(format_rational(F(5)), int)
        assert format_rational(F(5, 2)) == "5/2"
        assert format_rational(F(-6, 3)) == -2

    @given(st.fractions())
    def test_round_trip(self, q):
        assert parse_rational(format_rational(q)) == q


class TestTerminalSet:
    def test_of_nodes_and_members(self):
        net = instance_b_network()
        s = TerminalSet.of_nodes(net, [0, 2])
        assert list(s.members()) == [0, 2]
        assert list(s.nodes(net)) == [0, 2]
        assert 0 in s and 1 not in s and 2 in s
        assert len(s) == 2

    def test_lattice_ops(self):
        a = TerminalSet(0b011, 3)
        b = TerminalSet(0b110, 3)
        assert (a | b).bits == 0b111
        assert (a & b).bits == 0b010

    def test_full_and_empty(self):
        assert TerminalSet.full(3).bits == 0b111
        assert len(TerminalSet.empty(3)) == 0

    def test_label(self):
        net = instance_b_network()
        assert TerminalSet.of_nodes(net, [0, 1]).label(net) == "{0,1}"
        assert TerminalSet.empty(net.k).label(net) == "{}"

    def test_rejects_non_terminal_node(self):
        net = instance_b_network()
        with pytest.raises(ValueError):
            TerminalSet.of_nodes(net, [0, 1, 2, 3])


class TestSupplyVector:
    def test_for_network_alignment(self):
        net = instance_b_network()
        b = SupplyVector.for_network(net, {0: F(5), 1: F(1), 2: F(-6)})
        assert b.values == (F(5), F(1), F(-6))
        assert b.total_supply() == F(6)

    def test_net_supply_over_subsets(self):
        net = instance_b_network()
        b = SupplyVector.for_network(net, {0: F(5), 1: F(1), 2: F(-6)})
        assert net_supply(b, TerminalSet.of_nodes(net, [0, 1])) == F(6)
        assert net_supply(b, TerminalSet.of_nodes(net, [0, 2])) == F(-1)
        assert net_supply(b, TerminalSet.full(net.k)) == 0
        assert net_supply(b, TerminalSet.empty(net.k)) == 0


class TestNetworkValidation:
    def test_clean_instance(self, instance_b):
        net, b = instance_b
        assert validate_instance(net, b) == []

    def test_unbalanced_supplies(self):
        net = single_arc_network()
        b = SupplyVector.for_network(net, {0: F(3), 1: F(-2)})
        problems = validate_instance(net, b)
        assert any("supplies do not sum to zero (total 1)" in p for p in problems)

    def test_overlapping_terminals(self):
        net = FlowNetwork(node_count=2, arcs=(Arc(0, 1, F(1), F(1)),),
                          sources=(0,), sinks=(0,))
        problems = validate_instance(net)
        assert any("both source and sink" in p for p in problems)

    def test_negative_capacity_and_transit(self):
        net = FlowNetwork(node_count=2, arcs=(Arc(0, 1, F(-1), F(-2)),),
                          sources=(0,), sinks=(1,))
        problems = validate_instance(net)
        assert len(problems) >= 2

    def test_arc_endpoint_out_of_range(self):
        net = FlowNetwork(node_count=2, arcs=(Arc(0, 5, F(1), F(1)),),
                          sources=(0,), sinks=(1,))
        assert validate_instance(net)

    def test_sign_of_supplies(self):
        net = single_arc_network()
        b = SupplyVector.for_network(net, {0: F(-3), 1: F(3)})
        assert validate_instance(net, b)


class TestNetworkDerived:
    def test_terminals_order_sources_first(self):
        net = instance_b_network()
        assert net.terminals == (0, 1, 2)
        assert net.k == 3
        assert net.terminal_index == {0: 0, 1: 1, 2: 2}

    def test_capacity_bound(self):
        net = instance_b_network()
        assert net.capacity_bound == F(3)
