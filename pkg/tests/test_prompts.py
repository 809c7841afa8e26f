from __future__ import annotations

import pytest

from pingrid.prompts import ALL_PROMPTS, prompt_hash, prompt_text

# Pinned so any edit to a shipped prompt is a deliberate, reviewed change.
PINNED_HASHES = {
    "segmentation": "b0cc95d56bc112f60aa56783755a29598e6b7245d6c10bd08509b553cfcce449",
    "parameter_generation": "f4e3ce9f13fe3b3e56d5a98744543a8aca90e3cf671a7b7c77e8458644e7937c",
    "parameter_inference": "9674857f8fa48b60fca25c8c8dabe0e30baf8c777ffdce3dcfed2db1d28c2866",
    "code_instruction": "7f0c812f22fd12fb37df11038c048b688c28b5e895fc7220840fc5aba45a768b",
    "primitive_agent": "faf81a5480c24015b897490b17fe7b7324f8a4795b0d01432633c95921bf8faf",
    "animation_agent": "870c292bc493bb8ead4de07667bfa41e21ccdca870ea10f455fd752da168c332",
    "interaction_agent": "d29dab9e6612c3bddbe8494fdc86fdda296cfc614469eda05e6775676d1540c8",
}


def test_all_prompts_pinned():
    assert set(PINNED_HASHES) == set(ALL_PROMPTS)


@pytest.mark.parametrize("name", sorted(PINNED_HASHES))
def test_prompt_hash_pinned(name):
    assert prompt_hash(name) == PINNED_HASHES[name], f"prompt {name} drifted"


@pytest.mark.parametrize(
    "name,marker",
    [
        ("segmentation", '"is_followup": "Boolean"'),
        ("parameter_generation", "all parameter should indicate ONLY number"),
        ("parameter_inference", "include an `updatedParams` field"),
        ("code_instruction", "Handling 'None' Inputs"),
        ("primitive_agent", "Storage for all 24x24 pin objects"),
        ("animation_agent", "deltaTime is in seconds"),
        ("interaction_agent", "unique identifier for the button group"),
    ],
)
def test_prompt_carries_contract_marker(name, marker):
    assert marker in prompt_text(name)


def test_unknown_prompt_rejected():
    with pytest.raises(KeyError):
        prompt_text("nonexistent")
