from sqlalchemy import Column, DateTime
from datetime import datetime, timezone


class RunTimestampMixin:
    """Mixin class to add creation and update tracking to stored runs."""

    created_at = Column(DateTime, nullable=False, default=lambda: datetime.now(timezone.utc))
    updated_at = Column(DateTime, nullable=True)

    def touch(self):
        """Update the updated_at timestamp to current time."""
        self.updated_at = datetime.now(timezone.utc)
