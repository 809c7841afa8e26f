from ..core import ScriptCategory
from ..data import seed_records
from .store import ExampleRecord, ExampleStore, cosine_similarity


def seeded_store(gateway) -> ExampleStore:
    """An ExampleStore pre-loaded with the bundled example collections."""
    store = ExampleStore(gateway)
    for category in ScriptCategory:
        for row in seed_records(category.value):
            store.add_example(category, row["instruction"], row["code"], record_id=row["id"])
    return store


__all__ = ["ExampleRecord", "ExampleStore", "cosine_similarity", "seeded_store"]
