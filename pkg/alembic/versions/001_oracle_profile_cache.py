"""Oracle profile cache table

Revision ID: 001_oracle_profile_cache
Revises:
Create Date: 2026-10-19

This migration creates the oracle_profile table, one row per braiding
digest and degree.
"""

from typing import Sequence, Union

import sqlalchemy as sa
from alembic import op

# revision identifiers, used by Alembic.
revision: str = "001_oracle_profile_cache"
down_revision: Union[str, None] = None
branch_labels: Union[str, Sequence[str], None] = None
depends_on: Union[str, Sequence[str], None] = None


def upgrade() -> None:
    op.create_table(
        "oracle_profile",
        sa.Column("id", sa.Uuid(), nullable=False),
        sa.Column("braiding_digest", sa.String(length=64), nullable=False),
        sa.Column("dimension", sa.Integer(), nullable=False),
        sa.Column("degree", sa.Integer(), nullable=False),
        sa.Column("rank", sa.Integer(), nullable=False),
        sa.Column("primes", sa.JSON(), nullable=False, comment="Primes the rank was computed modulo"),
        sa.Column("runtime_ms", sa.Float(), nullable=False),
        sa.Column(
            "created_at",
            sa.DateTime(timezone=True),
            server_default=sa.func.now(),
            nullable=False,
        ),
        sa.Column(
            "updated_at",
            sa.DateTime(timezone=True),
            server_default=sa.func.now(),
            nullable=False,
        ),
        sa.PrimaryKeyConstraint("id"),
        sa.UniqueConstraint("braiding_digest", "degree", name="uq_oracle_profile_digest_degree"),
    )
    op.create_index("ix_oracle_profile_braiding_digest", "oracle_profile", ["braiding_digest"])


def downgrade() -> None:
    op.drop_index("ix_oracle_profile_braiding_digest", table_name="oracle_profile")
    op.drop_table("oracle_profile")
