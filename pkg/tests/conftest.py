import pytest

import bhneumann as bn


@pytest.fixture(scope="session")
def toy_seqs() -> bn.SequenceSet:
    seqs = bn.SequenceSet(bn.GrowthProfile.toy())
    seqs.ensure(50)
    return seqs


@pytest.fixture(scope="session")
def toy_ctx(toy_seqs) -> bn.GroupContext:
    return bn.GroupContext(toy_seqs)
