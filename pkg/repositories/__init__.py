"""Repositories package."""

from repositories.profile_repository import ProfileRepository

__all__ = ["ProfileRepository"]
