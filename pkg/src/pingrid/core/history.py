"""Session history: append, rollback, and branch semantics.

Rollback never truncates: it re-points the active card and rebuilds the two
memories by replaying the parent chain, so abandoned branches stay reachable
and a later prompt forks from the rollback target.
"""

from __future__ import annotations

from .types import CATEGORY_ORDER, HistoryCard, ScriptCategory, Session


def parent_chain(session: Session, card_id: str) -> list[HistoryCard]:
    """Cards from the root down to card_id, following parent links."""
    chain: list[HistoryCard] = []
    current: str | None = card_id
    while current is not None:
        card = session.card_by_id(current)
        chain.append(card)
        current = card.parent_id
    chain.reverse()
    return chain


def append_card(session: Session, card: HistoryCard) -> None:
    """Append a new card and make it active, updating both memories."""
    session.cards.append(card)
    session.active_card_id = card.id
    session.helper_memory.append((card.user_input, card.instructions))
    for artifact in card.artifacts:
        session.generator_memory[artifact.category] = artifact.source


def rollback(session: Session, card_id: str) -> Session:
    """Re-point the session at card_id, replaying its parent chain.

    The card list itself is never truncated; generator and helper memory
    are rebuilt from the chain ending at the target card.
    """
    chain = parent_chain(session, card_id)
    session.active_card_id = card_id
    session.helper_memory = [(card.user_input, card.instructions) for card in chain]
    memory: dict[ScriptCategory, str | None] = {c: None for c in CATEGORY_ORDER}
    for card in chain:
        for artifact in card.artifacts:
            memory[artifact.category] = artifact.source
    session.generator_memory = memory
    return session
