import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from groundgate.costmodel import (
    FORWARD_FLOPS_FORMULA,
    CostLedgerEntry,
    ModelCostProfile,
    amortization_note,
    breakeven_queries,
    check_ledger,
    estimate_report,
    finetune_flops_per_example,
    forward_flops,
    ledger_from_json,
    ledger_to_json,
    load_ledger,
    total_finetune_flops,
)
from groundgate.errors import ValidationError


def profile(**overrides):
    base = dict(name="test", parameter_count=110e6, layers=12, hidden_dim=768,
                sequence_length=512, train_examples=0, epochs=0)
    base.update(overrides)
    return ModelCostProfile(**base)


# -- forward_flops -------------------------------------------------------------

def test_base_encoder_worked_example():
    # independent arithmetic: 2*110e6*512 + 4*12*512^2*768
    expected = 2 * 110e6 * 512 + 4 * 12 * 512**2 * 768
    assert expected == pytest.approx(1.22303676416e11)
    assert forward_flops(profile()) == pytest.approx(expected, rel=1e-12)


def test_sequence_length_one_tiny_profile():
    tiny = profile(parameter_count=1000, layers=2, hidden_dim=8, sequence_length=1)
    # 2*1000*1 + 4*2*1*8 = 2000 + 64
    assert forward_flops(tiny) == 2064.0


def test_doubling_sequence_more_than_doubles_flops():
    base = forward_flops(profile(sequence_length=256))
    doubled = forward_flops(profile(sequence_length=512))
    assert doubled > 2 * base


@settings(max_examples=60, deadline=None)
@given(
    p=st.floats(1e6, 1e12), s=st.integers(1, 8192),
    layers=st.integers(1, 128), d=st.integers(1, 16384),
    bump=st.sampled_from(["parameter_count", "sequence_length", "layers", "hidden_dim"]),
)
def test_strictly_monotone_in_each_formula_field(p, s, layers, d, bump):
    base = profile(parameter_count=p, sequence_length=s, layers=layers, hidden_dim=d)
    grown = {
        "parameter_count": profile(parameter_count=p * 2, sequence_length=s, layers=layers, hidden_dim=d),
        "sequence_length": profile(parameter_count=p, sequence_length=s + 1, layers=layers, hidden_dim=d),
        "layers": profile(parameter_count=p, sequence_length=s, layers=layers + 1, hidden_dim=d),
        "hidden_dim": profile(parameter_count=p, sequence_length=s, layers=layers, hidden_dim=d + 1),
    }[bump]
    assert forward_flops(grown) > forward_flops(base)


# -- fine-tuning cost -------------------------------------------------------------

def test_finetune_ratio_is_three_for_any_profile():
    for seq in (16, 512, 2048):
        prof = profile(sequence_length=seq)
        assert finetune_flops_per_example(prof) / forward_flops(prof) == 3.0


def test_total_finetune_zero_epochs_is_zero():
    assert total_finetune_flops(profile(train_examples=100, epochs=0)) == 0.0


def test_total_finetune_single_example_single_epoch():
    prof = profile(train_examples=1, epochs=1)
    assert total_finetune_flops(prof) == finetune_flops_per_example(prof)


def test_total_finetune_scales_with_examples_and_epochs():
    prof = profile(train_examples=10, epochs=2)
    assert total_finetune_flops(prof) == 20 * finetune_flops_per_example(prof)


def test_architecture_fields_must_be_positive():
    with pytest.raises(ValidationError):
        profile(layers=0)
    with pytest.raises(ValidationError):
        profile(sequence_length=0)


def test_estimate_report_carries_formula():
    report = estimate_report(profile())
    assert report["formula"] == FORWARD_FLOPS_FORMULA
    assert report["forward_flops"] == forward_flops(profile())


# -- breakeven ----------------------------------------------------------------------

def test_breakeven_worked_example():
    # 1e15 / (1.6e13 - 5.1e11) recomputed independently
    expected = 1e15 / 1.549e13
    assert expected == pytest.approx(64.55777921239509, abs=1e-9)
    assert breakeven_queries(1e15, 5.1e11, 1.6e13) == pytest.approx(expected, abs=1e-9)


def test_breakeven_zero_training_cost():
    assert breakeven_queries(0.0, 5.1e11, 1.6e13) == 0.0


def test_breakeven_requires_llm_more_expensive():
    with pytest.raises(ValidationError):
        breakeven_queries(1e15, 1.6e13, 1.6e13)
    with pytest.raises(ValidationError):
        breakeven_queries(1e15, 2e13, 1.6e13)


def test_breakeven_simple_arithmetic_cases():
    assert breakeven_queries(100.0, 0.0, 10.0) == pytest.approx(10.0, abs=1e-9)
    assert breakeven_queries(1.0, 1.0, 3.0) == pytest.approx(0.5, abs=1e-9)


# -- ledger -------------------------------------------------------------------------

def test_ledger_round_trips_exactly():
    entries = load_ledger()
    reloaded = ledger_from_json(ledger_to_json(entries))
    assert reloaded == sorted(entries, key=lambda e: e.model)
    assert ledger_to_json(reloaded) == ledger_to_json(entries)


def test_published_flops_cells_exact():
    by_model = {e.model: e for e in load_ledger()}
    assert by_model["bert-base"].ft_flops == 9.3e11
    assert by_model["bert-base"].inference_flops == 3.1e11
    assert by_model["modernbert-base"].ft_flops == 1.5e12
    assert by_model["modernbert-base"].inference_flops == 5.1e11
    assert by_model["roberta-large"].ft_flops == 3.3e13
    assert by_model["llama-3.1-8b-instruct"].inference_flops == 1.6e13
    assert by_model["llm2vec"].ft_flops is None


def test_checker_ratios_and_flags():
    report = {row["model"]: row for row in check_ledger(load_ledger())}
    assert report["bert-base"]["ratio"] == pytest.approx(3.0)
    assert report["bert-base"]["status"] == "ok"
    assert report["modernbert-base"]["ratio"] == pytest.approx(2.9411764705882355)
    assert report["modernbert-base"]["status"] == "ok"
    assert report["roberta-large"]["ratio"] == pytest.approx(30.0)
    assert report["roberta-large"]["status"] == "flagged"
    for llama in ("llama-3.2-1b-instruct", "llama-3.2-3b-instruct", "llama-3.1-8b-instruct"):
        assert report[llama]["status"] == "flagged"
    assert report["llm2vec"]["status"] == "unknown"
    assert report["gpt-4o"]["status"] == "unknown"


def test_amortization_note_states_implied_examples():
    note = amortization_note(load_ledger())
    assert "53,333" in note
    assert "reconstruction" in note
    assert "5,000" in note


def test_ledger_entry_validation():
    with pytest.raises(ValidationError):
        CostLedgerEntry(model="m", ft_flops=-1.0, inference_flops=1.0,
                        provenance="published")
    with pytest.raises(ValidationError):
        CostLedgerEntry(model="m", ft_flops=1.0, inference_flops=1.0,
                        provenance="guessed")


def test_ledger_json_is_deterministic():
    assert ledger_to_json(load_ledger()) == ledger_to_json(load_ledger())
    json.loads(ledger_to_json(load_ledger()))  # valid JSON
