from django.db import models


class AnalysisRecord(models.Model):
    STATUS_CHOICES = [
        ("completed", "Completed"),
        ("rejected", "Input rejected"),
        ("internal_error", "Internal error"),
    ]

    name = models.CharField(max_length=200, blank=True)
    checksum = models.CharField(max_length=64)
    cap = models.PositiveIntegerField()
    report_version = models.CharField(max_length=20)
    status = models.CharField(max_length=20, choices=STATUS_CHOICES, default="completed")
    is_cy = models.BooleanField(null=True, blank=True)
    gldim = models.PositiveIntegerField(null=True, blank=True)
    rejected_stage = models.CharField(max_length=40, blank=True)
    report = models.TextField()
    created_at = models.DateTimeField(auto_now_add=True)
    updated_at = models.DateTimeField(auto_now=True)

    class Meta:
        unique_together = ("checksum", "cap", "report_version")
        ordering = ["-updated_at"]

    def __str__(self):
        verdict = {True: "CY", False: "not CY", None: self.status}[self.is_cy]
        return f"{self.name or self.checksum[:12]} (cap {self.cap}): {verdict}"
