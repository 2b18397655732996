from .components import chunk_items, run_chunks

__all__ = ['chunk_items', 'run_chunks']
